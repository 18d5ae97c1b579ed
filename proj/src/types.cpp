#include "qgalois/types.hpp"

#include <Eigen/SVD>
#include <Eigen/Eigenvalues>

#include <sstream>

namespace qgalois {

namespace {

std::string make_message(const std::string& code, const std::string& identity,
                         double residual) {
  std::ostringstream os;
  os << code << ": " << identity << " (residual " << residual << ")";
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::string code, std::string identity, double residual)
    : std::runtime_error(make_message(code, identity, residual)),
      code_(std::move(code)),
      identity_(std::move(identity)),
      residual_(residual) {}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat as_matrix(const Vec& v, Index d1, Index d2) {
  Mat out(d1, d2);
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d2; ++j) out(i, j) = v(i * d2 + j);
  return out;
}

Vec as_vector(const Mat& m) {
  Vec out(m.rows() * m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i * m.cols() + j) = m(i, j);
  return out;
}

Vec apply_leg1(const Mat& t, const Vec& v, Index d1, Index d2) {
  Mat m = as_matrix(v, d1, d2);
  return as_vector(t * m);
}

Vec apply_leg2(const Mat& t, const Vec& v, Index d1, Index d2) {
  Mat m = as_matrix(v, d1, d2);
  return as_vector(m * t.transpose());
}

Mat leg_permutation(const std::vector<Index>& dims, const std::vector<int>& order) {
  Index total = 1;
  for (Index d : dims) total *= d;
  const int n = static_cast<int>(dims.size());
  std::vector<Index> idx(n, 0);
  Mat p = Mat::Zero(total, total);
  for (Index in = 0; in < total; ++in) {
    Index rem = in;
    for (int k = n - 1; k >= 0; --k) {
      idx[k] = rem % dims[k];
      rem /= dims[k];
    }
    Index out = 0;
    for (int k = 0; k < n; ++k) out = out * dims[order[k]] + idx[order[k]];
    p(out, in) = 1.0;
  }
  return p;
}

Mat leg_swap(Index d1, Index d2) {
  return leg_permutation({d1, d2}, {1, 0});
}

// Rank thresholds are rtol * max(sigma_max, 1): scale-invariant above the
// O(1) magnitude of normalized structure constants, with an absolute floor so
// that numerically-zero difference matrices do not count as full rank.

KernelResult kernel(const Mat& m, double rtol) {
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rtol * std::max(smax, 1.0)) ++rank;
  KernelResult out;
  out.rank = rank;
  out.sigma_max = smax;
  out.basis = svd.matrixV().rightCols(m.cols() - rank);
  return out;
}

Index numerical_rank(const Mat& m, double rtol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rtol * std::max(smax, 1.0)) ++rank;
  return rank;
}

Mat column_space(const Mat& m, double rtol) {
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rtol * std::max(smax, 1.0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

double smallest_singular_value(const Mat& m) {
  Eigen::BDCSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  return sv.size() ? sv(sv.size() - 1) : 0.0;
}

Mat hermitian_sqrt(const Mat& g) {
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  Vec d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().template cast<Cplx>();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

Mat hermitian_inv_sqrt(const Mat& g) {
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  Vec d(es.eigenvalues().size());
  for (Index i = 0; i < d.size(); ++i) d(i) = 1.0 / std::sqrt(es.eigenvalues()(i));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

double Rng::real() { return normal_(gen_); }

Cplx Rng::complex_value() {
  double re = normal_(gen_);
  double im = normal_(gen_);
  return {re, im};
}

Vec Rng::vec(Index n) {
  Vec out(n);
  for (Index i = 0; i < n; ++i) out(i) = complex_value();
  return out;
}

Mat Rng::mat(Index rows, Index cols) {
  Mat out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = complex_value();
  return out;
}

Mat Rng::hermitian(Index n) {
  Mat m = mat(n, n);
  return 0.5 * (m + m.adjoint());
}

Mat Rng::positive(Index n) {
  Mat m = mat(n, n);
  return m * m.adjoint() + 0.25 * Mat::Identity(n, n);
}

Index Rng::uniform_index(Index n) {
  std::uniform_int_distribution<Index> dist(0, n - 1);
  return dist(gen_);
}

}  // namespace qgalois
