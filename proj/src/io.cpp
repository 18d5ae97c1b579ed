// io module
