#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgalois/types.hpp"

namespace qgalois {

/// Wedderburn (multimatrix) form of a finite-dimensional C*-algebra:
/// block sizes n_k with an explicit unital *-isomorphism onto (+)_k Mat_{n_k}.
/// Multimatrix coordinates list the blocks in order, each block row-major.
struct WedderburnForm {
  std::vector<Index> blocks;
  Mat iso;      // dim x dim, basis coefficients -> multimatrix coordinates
  Mat iso_inv;
  double residual = 0.0;
  std::uint64_t seed = 0;
};

/// Finite-dimensional complex *-algebra given by structure constants.
///
/// Elements are coefficient vectors over the stored basis. The product map
/// is kept as the dim x dim^2 matrix  m: A (x) A -> A  in lexicographic
/// tensor coordinates; the involution is the antilinear map
/// star(v) = star_matrix * conj(v).
class CStarAlgebra {
 public:
  /// Validates associativity, the unit, the involution, and computes the
  /// Wedderburn form. Throws ValidationError (NotAssociative, NoUnit,
  /// NotInvolutive, NotSemisimple) naming the violated identity.
  static CStarAlgebra from_structure_constants(Mat mult, Mat star, Vec unit,
                                               std::vector<std::string> labels = {},
                                               const Options& opt = {});

  Index dim() const { return dim_; }
  const Mat& mult() const { return mult_; }
  const Mat& star_matrix() const { return star_; }
  const Vec& unit() const { return unit_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const WedderburnForm& wedderburn() const { return wedderburn_; }
  const Options& options() const { return opt_; }

  Vec multiply(const Vec& a, const Vec& b) const;
  Vec star(const Vec& a) const;
  Mat left_mult(const Vec& a) const;
  Mat right_mult(const Vec& a) const;
  const Mat& left_mult_basis(Index i) const { return lmats_[i]; }
  const Mat& right_mult_basis(Index i) const { return rmats_[i]; }

  /// Regular trace tau(a) = Tr(L_a); faithful positive on a semisimple *-algebra.
  RowVec regular_trace() const;

  bool mult_check_sampled() const { return mult_check_sampled_; }
  double validation_residual() const { return validation_residual_; }

 private:
  CStarAlgebra() = default;

  Index dim_ = 0;
  Mat mult_;
  Mat star_;
  Vec unit_;
  std::vector<std::string> labels_;
  std::vector<Mat> lmats_, rmats_;
  WedderburnForm wedderburn_;
  Options opt_;
  bool mult_check_sampled_ = false;
  double validation_residual_ = 0.0;
};

/// Linear functional with positivity certificates from the Gram matrix
/// G_ij = phi(x_i* x_j).
struct Functional {
  RowVec coeffs;
  bool hermitian = false;
  bool positive = false;
  bool faithful = false;
  double hermitian_residual = 0.0;
  double min_gram_eigenvalue = 0.0;

  Cplx value(const Vec& x) const { return (coeffs * x)(0); }
};

Functional check_functional(const CStarAlgebra& a, const RowVec& coeffs, double tol);

/// Gram matrix G_ij = phi(x_i* x_j) of a functional.
Mat gram_matrix(const CStarAlgebra& a, const RowVec& coeffs);

/// Dual basis for a faithful functional: column j of `dual` holds x^j with
/// phi(x_i x^j) = delta_ij.
struct DualBasisPair {
  Mat dual;
  double pairing_residual = 0.0;
};

DualBasisPair dual_basis(const CStarAlgebra& a, const Functional& phi, double tol);

/// Adjoint of the product map and the Frobenius/Q-system diagnostics for a
/// faithful positive functional. q_scalar holds lambda when ||m m* - lambda id||
/// is below tolerance (never for q_residual above it).
struct FrobeniusReport {
  double frobenius_residual = 0.0;   // three-term identity, max of both sides
  bool sampled = false;
  std::optional<double> q_scalar;
  double q_residual = 0.0;
  Vec coproduct_unit;                // m*(1)
  double coproduct_crosscheck = 0.0; // adjoint route vs dual-basis route at 1
  Mat coproduct;                     // m*: A -> A (x) A
};

FrobeniusReport frobenius_report(const CStarAlgebra& a, const Functional& phi,
                                 const Options& opt = {});

CStarAlgebra tensor_product(const CStarAlgebra& a, const CStarAlgebra& b,
                            const Options& opt = {});
CStarAlgebra opposite_algebra(const CStarAlgebra& a, const Options& opt = {});

/// Model algebra (+)_k Mat_{n_k} with matrix-unit basis, blocks row-major.
CStarAlgebra multimatrix_algebra(const std::vector<Index>& blocks,
                                 const Options& opt = {});

/// A unital *-closed subalgebra presented on an orthonormalized basis of the
/// given spanning columns, with its own validated structure constants.
struct Subalgebra {
  CStarAlgebra algebra;
  Mat inclusion;   // dim_A x dim_B
  double closure_residual = 0.0;
};

Subalgebra subalgebra_from_span(const CStarAlgebra& a, const Mat& span,
                                const Options& opt = {});

/// Residual of the unitarity identity  m_X = (v* m (x) id)(id (x) m_X*)
/// for a left module given by the images pi(x_i); zero iff the representation
/// is *-preserving for the phi-scalar product.
double module_unitarity_residual(const CStarAlgebra& a, const Functional& phi,
                                 const std::vector<Mat>& pi);

/// max_{i,j} |phi(x_i x_j) - phi(x_j beta(x_i))| for a linear map beta.
double kms_residual(const CStarAlgebra& a, const RowVec& phi, const Mat& beta);

/// Product of u and v in A (x) B without materializing the tensor-algebra
/// multiplication map.
Vec tensor_algebra_multiply(const CStarAlgebra& a, const CStarAlgebra& b, const Vec& u,
                            const Vec& v);

}  // namespace qgalois
