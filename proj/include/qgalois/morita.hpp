#pragma once

#include <optional>

#include "qgalois/coaction.hpp"

namespace qgalois {

/// An algebra with commuting left-G1 and right-G2 coactions.
class BiActionAlgebra {
 public:
  /// Requires both coactions to live on the same algebra and certifies the
  /// commutation (id (x) alpha2)alpha1 = (alpha1 (x) id)alpha2; throws
  /// NotCommuting otherwise.
  static BiActionAlgebra validate(CoAction left, CoAction right, const Options& opt = {});

  const CStarAlgebra& algebra() const { return left_.algebra(); }
  std::shared_ptr<const CStarAlgebra> algebra_ptr() const { return left_.algebra_ptr(); }
  const CoAction& left() const { return left_; }
  const CoAction& right() const { return right_; }
  double commutation_residual() const { return commutation_residual_; }
  const Options& options() const { return opt_; }

 private:
  BiActionAlgebra(CoAction l, CoAction r, double res, Options opt)
      : left_(std::move(l)), right_(std::move(r)), commutation_residual_(res), opt_(opt) {}

  CoAction left_;
  CoAction right_;
  double commutation_residual_ = 0.0;
  Options opt_;
};

/// One fixed-point algebra with the residual action of the other group, its
/// canonical invariant state and the dual basis for it.
struct FixedSideData {
  Subalgebra sub;
  CoAction restricted;
  CanonicalStateReport state;
  Mat dual;                  // dual basis in subalgebra coordinates
  double invariance_residual = 0.0;   // alpha(B) inside B (x) H
};

FixedSideData fixed_side_data(const BiActionAlgebra& b, Side which);

/// Everything the Morita-Galois verdict rests on: freeness of both actions,
/// the dual-basis identities sum_i x^i y x_i = lambda psi_2(y) 1 (and its
/// mirror), lambda = dim_q of both fixed algebras, and trivial relative
/// commutants.
struct MoritaReport {
  double commutation_residual = 0.0;
  FreenessReport free_left, free_right;
  Index dim_fixed_left = 0, dim_fixed_right = 0;
  double lambda = 0.0;          // Rayleigh estimate at y = 1
  double lambda_left = 0.0;     // dim_q A^{G1}
  double lambda_right = 0.0;    // dim_q A^{G2}
  double mkey_residual_1 = 0.0;
  double mkey_residual_2 = 0.0;
  Index commutant_dim_left_in_right = 0;   // (A^{G1})' n A^{G2}
  Index commutant_dim_right_in_left = 0;
  std::optional<double> exchange_defect;   // filled when the identities pass
  bool commuting_ok = true;
  bool verdict = false;
};

MoritaReport mkey_report(const BiActionAlgebra& b);

/// Exchange map S(a (x) b) = sum_j y^j (x) a y_j b with its inverse
/// e (x) f -> lambda^-1 sum_i x^i (x) e x_i f; multiplicativity of the pair,
/// bimodule and equivariance residuals, and the lambda-scaled unitarity
/// <Sz, Sw> = lambda <z, w> for the A-valued inner products.
struct ExchangeReport {
  Mat forward;   // (dim B2 * dim A) x (dim B1 * dim A)
  Mat inverse;
  double lambda = 0.0;
  double inverse_residual_1 = 0.0;   // S S^-1 - id
  double inverse_residual_2 = 0.0;   // S^-1 S - id
  double module_residual = 0.0;
  double equivariance_residual = 0.0;
  double inner_product_residual = 0.0;
  bool inner_product_sampled = false;
};

ExchangeReport exchange_map(const BiActionAlgebra& b);

/// One-sided criterion for an invariant unital subalgebra B of a right
/// G-C*-algebra: psi_B is the canonical state on B, psi on A^G is solved from
/// x^i y x_i = lambda psi(y) 1, then the mirror identity and the commutant
/// triviality are certified.
struct OneSidedReport {
  Index dim_b = 0, dim_fixed = 0;
  double lambda = 0.0;
  double dim_q_b = 0.0;
  double identity1_residual = 0.0;
  double identity2_residual = 0.0;
  bool solved_state_faithful = false;
  RowVec solved_state;               // on A^G in fixed-subalgebra coordinates
  Index commutant_dim_b_in_fixed = 0;
  Index commutant_dim_fixed_in_b = 0;
  bool verdict = false;
};

OneSidedReport onesided_report(const CoAction& right_action, const Mat& b_span);

/// Cotensor product over the shared middle quantum group:
/// C = {z in A (x) B : (alpha2 (x) id)z = (id (x) beta1)z} with the inherited
/// product and the outer coactions restricted. Throws KernelNotSubalgebra when
/// the kernel is not multiplicatively closed.
struct CotensorResult {
  BiActionAlgebra object;
  Mat embedding;          // (dim A * dim B) x dim C
  double closure_residual = 0.0;
};

CotensorResult cotensor(const BiActionAlgebra& b1, const BiActionAlgebra& b2);

/// Unique jointly invariant state; restrictions to both fixed algebras match
/// the canonical invariant states.
struct JointStateReport {
  Functional state;
  double restriction_residual_left = 0.0;
  double restriction_residual_right = 0.0;
};

JointStateReport joint_canonical_state(const BiActionAlgebra& b);

/// Search for a bi-equivariant unital *-isomorphism between two bi-action
/// algebras over the same pair of quantum groups: linear solve over the
/// intertwiner space, Gauss-Newton on the multiplicativity residual, then
/// polar correction to a unitary for the joint canonical GNS metrics.
struct EquivariantIsoReport {
  bool found = false;
  Mat iso;
  double residual = 0.0;
};

EquivariantIsoReport find_equivariant_iso(const BiActionAlgebra& b1,
                                          const BiActionAlgebra& b2);

}  // namespace qgalois
