// examples module
