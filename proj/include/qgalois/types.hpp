#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qgalois {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RowVec = Eigen::RowVectorXcd;
using Index = Eigen::Index;

/// Tolerance and RNG seed shared by validators and reports.
struct Options {
  double tol = 1e-9;
  std::uint64_t seed = 0;
};

/// A structural axiom failed. Carries a short error code (e.g. "NotAssociative"),
/// the violated identity in plain text, and the measured residual.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string code, std::string identity, double residual);

  const std::string& code() const { return code_; }
  const std::string& identity() const { return identity_; }
  double residual() const { return residual_; }

 private:
  std::string code_;
  std::string identity_;
  double residual_;
};

// Tensor coordinates are lexicographic with the first factor slowest:
// index(i, j) = i * dim2 + j, which matches kron() below.

Mat kron(const Mat& a, const Mat& b);

/// Reshape v in V1 (x) V2 into the d1 x d2 matrix M(i,j) = v(i*d2 + j).
Mat as_matrix(const Vec& v, Index d1, Index d2);
Vec as_vector(const Mat& m);

/// (T (x) id) v for v in V1 (x) V2, T: V1 -> W.
Vec apply_leg1(const Mat& t, const Vec& v, Index d1, Index d2);
/// (id (x) T) v for v in V1 (x) V2, T: V2 -> W.
Vec apply_leg2(const Mat& t, const Vec& v, Index d1, Index d2);

/// Permutation matrix reordering tensor legs. order[k] is the index of the
/// input leg placed at slot k of the output.
Mat leg_permutation(const std::vector<Index>& dims, const std::vector<int>& order);

/// Swap V1 (x) V2 -> V2 (x) V1.
Mat leg_swap(Index d1, Index d2);

struct KernelResult {
  Mat basis;         // orthonormal columns spanning the numerical kernel
  Index rank = 0;
  double sigma_max = 0.0;
};

/// Kernel with singular values below rtol * sigma_max treated as zero.
KernelResult kernel(const Mat& m, double rtol);

Index numerical_rank(const Mat& m, double rtol);

/// Orthonormal basis of the column space (SVD-based, deterministic).
Mat column_space(const Mat& m, double rtol);

double smallest_singular_value(const Mat& m);

/// Hermitian square root / inverse square root of a positive definite matrix.
Mat hermitian_sqrt(const Mat& g);
Mat hermitian_inv_sqrt(const Mat& g);

/// Deterministic complex Gaussian source.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double real();
  Cplx complex_value();
  Vec vec(Index n);
  Mat mat(Index rows, Index cols);
  Mat hermitian(Index n);
  /// Positive definite with spectrum bounded away from zero.
  Mat positive(Index n);
  Index uniform_index(Index n);

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace qgalois
