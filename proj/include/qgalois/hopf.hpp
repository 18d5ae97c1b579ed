#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qgalois/algebra.hpp"
#include "qgalois/types.hpp"

namespace qgalois {

/// Finite group multiplication table; table[i][j] is the index of g_i g_j.
struct GroupTable {
  int order = 0;
  std::vector<std::vector<int>> table;
  int identity = 0;
  std::vector<int> inverse;

  /// Checks associativity, identity and inverses; throws NotAGroup.
  static GroupTable validate(std::vector<std::vector<int>> table);
  static GroupTable cyclic(int n);
  static GroupTable direct_product(const GroupTable& a, const GroupTable& b);
  static GroupTable symmetric3();
};

/// Unitary representation given by its matrix of coefficients: row i*n+j of
/// `coeffs` holds u_ij as an element of the function algebra.
struct UnitaryRepresentation {
  Index dim = 0;
  Mat coeffs;        // n^2 x dim_H
  Mat rho_matrix;    // pi_U(rho)
  double unitarity_residual = 0.0;
  double corep_residual = 0.0;

  Vec coefficient(Index i, Index j) const { return coeffs.row(i * dim + j).transpose(); }
  /// Character sum_i u_ii.
  Vec character() const;
};

/// Finite quantum group: a finite-dimensional Hopf *-algebra with its Haar
/// state, Woronowicz character data and the list of irreducible unitary
/// representations (one per block of the dual algebra, deterministic order).
class FiniteQuantumGroup {
 public:
  static FiniteQuantumGroup validate(CStarAlgebra h, Mat comul, RowVec counit, Mat antipode,
                                     std::optional<RowVec> haar = std::nullopt,
                                     std::optional<RowVec> rho = std::nullopt,
                                     const Options& opt = {});

  Index dim() const { return algebra_->dim(); }
  const CStarAlgebra& algebra() const { return *algebra_; }
  std::shared_ptr<const CStarAlgebra> algebra_ptr() const { return algebra_; }
  const Mat& comul() const { return comul_; }
  const RowVec& counit() const { return counit_; }
  const Mat& antipode() const { return antipode_; }
  const Mat& unitary_antipode() const { return unitary_antipode_; }
  const Functional& haar() const { return haar_; }
  const RowVec& rho() const { return rho_; }
  bool rho_trivial() const { return rho_trivial_; }
  const CStarAlgebra& dual_algebra() const { return *dual_algebra_; }
  const std::vector<UnitaryRepresentation>& irreps() const { return irreps_; }
  const Options& options() const { return opt_; }

  /// pi_U(omega) = (id (x) omega)(U) for a functional on H.
  Mat rep_matrix(const UnitaryRepresentation& u, const RowVec& omega) const;

  /// Element-of-H matrix of the tensor product U (x) V (coefficients u_ij v_pq).
  UnitaryRepresentation tensor_rep(const UnitaryRepresentation& u,
                                   const UnitaryRepresentation& v) const;

 private:
  FiniteQuantumGroup() = default;

  std::shared_ptr<const CStarAlgebra> algebra_;
  std::shared_ptr<const CStarAlgebra> dual_algebra_;
  Mat comul_;
  RowVec counit_;
  Mat antipode_;
  Mat unitary_antipode_;
  Functional haar_;
  RowVec rho_;
  bool rho_trivial_ = true;
  std::vector<UnitaryRepresentation> irreps_;
  Options opt_;
};

/// Unique normalized solution of (h (x) id)Delta = h(.)1 = (id (x) h)Delta.
/// Throws NonUniqueInvariantState when the solution space is not a line.
RowVec haar_state(const CStarAlgebra& h, const Mat& comul, double tol);

/// ||Delta(u_ij) - sum_k u_ik (x) u_kj|| over all entries.
double corepresentation_residual(const CStarAlgebra& h, const Mat& comul,
                                 const UnitaryRepresentation& u);
/// ||sum_j u_ij u_kj* - delta_ik 1|| over all entries.
double unitarity_residual(const CStarAlgebra& h, const UnitaryRepresentation& u);

/// Standard Hopf structures on C(G) and C[G] for a finite group table; rho = 1.
FiniteQuantumGroup build_function_algebra(const GroupTable& g, const Options& opt = {});
FiniteQuantumGroup build_group_algebra(const GroupTable& g, const Options& opt = {});

/// Dual Hopf *-algebra on H* (product <-> coproduct transposed).
FiniteQuantumGroup dual_quantum_group(const FiniteQuantumGroup& g, const Options& opt = {});

/// Residuals comparing the double dual with the original under the canonical
/// pairing (in the stored bases the identification is the identity matrix).
struct DoubleDualReport {
  double mult_residual = 0.0;
  double comul_residual = 0.0;
  double star_residual = 0.0;
  double antipode_residual = 0.0;
  double max() const;
};
DoubleDualReport double_dual_residuals(const FiniteQuantumGroup& g, const Options& opt = {});

/// Standard solution of the conjugate equations from a positive rho-matrix:
/// R(1) = sum_i conj-basis_i (x) rho^{-1/2} e_i, Rbar(1) = sum_i rho^{1/2} e_i (x) conj-basis_i.
/// Works on standalone representation data (no Hopf algebra required).
struct StandardSolution {
  Vec r1;       // in H_conj (x) H_U coordinates
  Vec rbar1;    // in H_U (x) H_conj coordinates
  double dim_q = 0.0;
  double conjugate_equations_residual = 0.0;
  double balancing_residual = 0.0;  // |Tr rho - Tr rho^-1|
};
StandardSolution standard_solution(const Mat& rho_matrix, double tol);

/// Conjugate representation Ubar = (j(rho)^{1/2} (x) 1) U^c (j(rho)^{-1/2} (x) 1)
/// together with its standard solution; checks Ubar is a unitary corepresentation
/// and that R(1) is an invariant vector of Ubar (x) U.
struct ConjugateReport {
  UnitaryRepresentation conjugate;
  StandardSolution solution;
  double invariance_residual = 0.0;
};
ConjugateReport conjugate_representation(const FiniteQuantumGroup& g,
                                         const UnitaryRepresentation& u);

}  // namespace qgalois
