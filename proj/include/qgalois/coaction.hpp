#pragma once

#include <memory>

#include "qgalois/algebra.hpp"
#include "qgalois/hopf.hpp"

namespace qgalois {

enum class Side { Left, Right };

/// A validated coaction of a finite quantum group on a finite-dimensional
/// C*-algebra. Left coactions map A -> H (x) A with rows ordered (h, a);
/// right coactions map A -> A (x) H with rows ordered (a, h).
///
/// Validation certifies: unital injective *-homomorphism, the coaction law,
/// and the counit law; the fixed-point algebra A^G and the conditional
/// expectation E (Haar slice of the coaction) are computed along the way.
class CoAction {
 public:
  static CoAction validate(std::shared_ptr<const CStarAlgebra> a,
                           std::shared_ptr<const FiniteQuantumGroup> g, Side side, Mat map,
                           const Options& opt = {});

  Side side() const { return side_; }
  const Mat& map() const { return map_; }
  const CStarAlgebra& algebra() const { return *algebra_; }
  const FiniteQuantumGroup& hopf() const { return *hopf_; }
  std::shared_ptr<const CStarAlgebra> algebra_ptr() const { return algebra_; }
  std::shared_ptr<const FiniteQuantumGroup> hopf_ptr() const { return hopf_; }
  /// Orthonormal basis of A^G = {a : alpha(a) = 1 (x) a}.
  const Mat& fixed_basis() const { return fixed_basis_; }
  /// E = (h (x) id)alpha resp. (id (x) h)alpha.
  const Mat& conditional_expectation() const { return expectation_; }
  const Options& options() const { return opt_; }
  double validation_residual() const { return validation_residual_; }

  /// alpha(u) alpha(v)-style product in the codomain tensor algebra.
  Vec codomain_multiply(const Vec& u, const Vec& v) const;

 private:
  CoAction() = default;

  std::shared_ptr<const CStarAlgebra> algebra_;
  std::shared_ptr<const FiniteQuantumGroup> hopf_;
  Side side_ = Side::Left;
  Mat map_;
  Mat fixed_basis_;
  Mat expectation_;
  Options opt_;
  double validation_residual_ = 0.0;
};

/// Translation coaction of C(G) on itself (the comultiplication, either side).
CoAction translation_coaction(std::shared_ptr<const FiniteQuantumGroup> g, Side side,
                              const Options& opt = {});
/// Trivial coaction a -> 1 (x) a (resp. a (x) 1).
CoAction trivial_coaction(std::shared_ptr<const CStarAlgebra> a,
                          std::shared_ptr<const FiniteQuantumGroup> g, Side side,
                          const Options& opt = {});

/// Galois-map freeness test: a (x) b -> alpha(a)(1 (x) b) is surjective onto
/// C(G) (x) A exactly for free actions.
struct FreenessReport {
  bool free = false;
  Index rank = 0;
  Index expected_rank = 0;
};
FreenessReport is_free_galois(const CoAction& c);

/// Spectral subspace A_U = {a : alpha(a) in C[G]_U (x) A} and the defect of
/// the localized Galois map A_U (x)_B A -> C[G]_U (x) A for the Hilbert-module
/// inner products induced by E and the Haar state.
struct SpectralSubspaceReport {
  Index dim_subspace = 0;
  Index rank = 0;
  Index expected_rank = 0;
  bool surjective = false;
  double isometry_residual = 0.0;
  bool sampled = false;
  double defect = 0.0;  // max(isometry residual, 1.0 if not surjective)
};
SpectralSubspaceReport spectral_subspace(const CoAction& c, const UnitaryRepresentation& u);

/// Basis of the equivariant module invariants F(U) = (H_U (x) A)^G.
Mat module_invariants(const CoAction& c, const UnitaryRepresentation& u);

/// Defects of the spectral functor's tensor structure
/// F(U) (x)_B F(V) -> F(U (x) V), x (x) y -> x_13 y_23 (mirrored on the right):
/// always isometric, unitary exactly in the free case.
struct SpectralFunctorReport {
  Index dim_fu = 0, dim_fv = 0, dim_fuv = 0;
  double isometry_residual = 0.0;
  bool sampled = false;
  Index cokernel_dim = 0;
  double out_of_space_residual = 0.0;
};
SpectralFunctorReport spectral_functor_defect(const CoAction& c, const UnitaryRepresentation& u,
                                              const UnitaryRepresentation& v);

/// Canonical invariant state phi(a) = (dim_q A)^-1 Tr(lambda(a) pi_alpha(rho)),
/// certified invariant, faithful, positive and with Q-system scalar dim_q A.
/// Left coactions are handled through the opposite-algebra conversion.
struct CanonicalStateReport {
  Functional state;
  double dim_q = 0.0;
  double invariance_residual = 0.0;
  double q_scalar = 0.0;
  double q_residual = 0.0;
};
CanonicalStateReport canonical_state(const CoAction& c);

/// Residual of phi(ab) = phi(b (rho |> a)) with rho |> a = pi_alpha(rho) a.
double kms_residual(const CoAction& c, const Functional& phi);

/// pi_alpha(rho) as a matrix on A (for the given side's conventions).
Mat rho_action_matrix(const CoAction& c);

/// Side conversion a -> (id (x) R)(alpha(a)_21) onto the opposite algebra,
/// and its inverse; the double conversion returns the original coaction.
CoAction convert_side(const CoAction& c);

}  // namespace qgalois
