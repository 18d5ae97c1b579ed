#include "qgalois/hopf.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace qgalois {

// representation.cpp
std::vector<UnitaryRepresentation> compute_irreps(const CStarAlgebra& h,
                                                  const CStarAlgebra& dual_alg,
                                                  const RowVec& rho, double tol);

GroupTable GroupTable::validate(std::vector<std::vector<int>> table) {
  GroupTable g;
  g.order = static_cast<int>(table.size());
  const int n = g.order;
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n)
      throw ValidationError("NotAGroup", "multiplication table is not square", 0.0);
    for (int v : row)
      if (v < 0 || v >= n) throw ValidationError("NotAGroup", "table entry out of range", 0.0);
  }
  g.identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) {
      g.identity = e;
      break;
    }
  }
  if (g.identity < 0) throw ValidationError("NotAGroup", "no identity element", 0.0);
  g.inverse.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y)
      if (table[x][y] == g.identity && table[y][x] == g.identity) {
        g.inverse[x] = y;
        break;
      }
    if (g.inverse[x] < 0) throw ValidationError("NotAGroup", "missing inverse", double(x));
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (table[table[x][y]][z] != table[x][table[y][z]])
          throw ValidationError("NotAGroup", "table is not associative", 0.0);
  g.table = std::move(table);
  return g;
}

GroupTable GroupTable::cyclic(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return validate(std::move(t));
}

GroupTable GroupTable::direct_product(const GroupTable& a, const GroupTable& b) {
  int n = a.order * b.order;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i1 = 0; i1 < a.order; ++i1)
    for (int j1 = 0; j1 < b.order; ++j1)
      for (int i2 = 0; i2 < a.order; ++i2)
        for (int j2 = 0; j2 < b.order; ++j2)
          t[i1 * b.order + j1][i2 * b.order + j2] = a.table[i1][i2] * b.order + b.table[j1][j2];
  return validate(std::move(t));
}

GroupTable GroupTable::symmetric3() {
  // permutations of {0,1,2} in one-line notation, identity first
  int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      int c[3];
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      for (int k = 0; k < 6; ++k)
        if (c[0] == perms[k][0] && c[1] == perms[k][1] && c[2] == perms[k][2]) t[a][b] = k;
    }
  return validate(std::move(t));
}

Vec UnitaryRepresentation::character() const {
  Vec chi = Vec::Zero(coeffs.cols());
  for (Index i = 0; i < dim; ++i) chi += coeffs.row(i * dim + i).transpose();
  return chi;
}

RowVec haar_state(const CStarAlgebra& h, const Mat& comul, double tol) {
  const Index d = h.dim();
  // rows (k,j): sum_i h_i Delta_{(i,j),k} = h_k unit_j, plus the mirror system.
  Mat sys(2 * d * d, d);
  for (Index k = 0; k < d; ++k)
    for (Index j = 0; j < d; ++j)
      for (Index i = 0; i < d; ++i) {
        sys(k * d + j, i) = comul(i * d + j, k) - (i == k ? h.unit()(j) : Cplx(0));
        sys(d * d + k * d + j, i) = comul(j * d + i, k) - (i == k ? h.unit()(j) : Cplx(0));
      }
  KernelResult ker = kernel(sys, tol);
  if (ker.basis.cols() != 1)
    throw ValidationError(
        "NonUniqueInvariantState",
        "invariant functional space has dimension " + std::to_string(ker.basis.cols()),
        double(ker.basis.cols()));
  RowVec hh = ker.basis.col(0).transpose();
  Cplx at_unit = (hh * h.unit())(0);
  if (std::abs(at_unit) < tol)
    throw ValidationError("NonUniqueInvariantState", "invariant functional vanishes at 1",
                          std::abs(at_unit));
  return hh / at_unit;
}

FiniteQuantumGroup FiniteQuantumGroup::validate(CStarAlgebra h, Mat comul, RowVec counit,
                                                Mat antipode, std::optional<RowVec> haar,
                                                std::optional<RowVec> rho, const Options& opt) {
  const Index d = h.dim();
  const double tol = opt.tol;
  if (comul.rows() != d * d || comul.cols() != d || counit.size() != d ||
      antipode.rows() != d || antipode.cols() != d)
    throw ValidationError("DimensionMismatch", "hopf structure shapes", 0.0);

  FiniteQuantumGroup g;
  g.opt_ = opt;

  {
    double r = (comul * h.unit() - kron(h.unit(), h.unit())).norm();
    if (r >= tol) throw ValidationError("ComultiplicationNotUnital", "Delta(1) = 1 (x) 1", r);
  }
  {
    double r = 0.0;
    Mat star_hh = kron(h.star_matrix(), h.star_matrix());
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) {
        Vec lhs = comul * h.mult().col(i * d + j);
        Vec rhs = tensor_algebra_multiply(h, h, comul.col(i), comul.col(j));
        r = std::max(r, (lhs - rhs).norm());
      }
      Vec lhs = comul * h.star_matrix().col(i);
      Vec rhs = star_hh * Vec(comul.col(i).conjugate());
      r = std::max(r, (lhs - rhs).norm());
    }
    if (r >= tol)
      throw ValidationError("ComultiplicationNotStarHom",
                            "Delta(xy) = Delta(x)Delta(y) and Delta(x*) = Delta(x)*", r);
  }
  {
    double r = 0.0;
    for (Index i = 0; i < d; ++i) {
      Vec w = comul.col(i);
      r = std::max(r, (apply_leg1(comul, w, d, d) - apply_leg2(comul, w, d, d)).norm());
    }
    if (r >= tol)
      throw ValidationError("CoassociativityError",
                            "(Delta (x) id)Delta = (id (x) Delta)Delta", r);
  }
  {
    double r = 0.0;
    Mat eps(1, d);
    eps = counit;
    for (Index i = 0; i < d; ++i) {
      Vec w = comul.col(i);
      r = std::max(r, (apply_leg1(eps, w, d, d) - Vec(Vec::Unit(d, i))).norm());
      r = std::max(r, (apply_leg2(eps, w, d, d) - Vec(Vec::Unit(d, i))).norm());
    }
    if (r >= tol)
      throw ValidationError("CounitLawViolated",
                            "(eps (x) id)Delta = id = (id (x) eps)Delta", r);
    double rc = std::abs((counit * h.unit())(0) - 1.0);
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j)
        rc = std::max(rc,
                      std::abs((counit * h.mult().col(i * d + j))(0) - counit(i) * counit(j)));
      rc = std::max(rc, std::abs((counit * h.star_matrix().col(i))(0) - std::conj(counit(i))));
    }
    if (rc >= tol)
      throw ValidationError("CounitNotCharacter", "eps is a unital *-homomorphism to C", rc);
  }
  {
    double r = 0.0;
    for (Index i = 0; i < d; ++i) {
      Vec w = comul.col(i);
      Vec lhs1 = h.mult() * apply_leg1(antipode, w, d, d);
      Vec lhs2 = h.mult() * apply_leg2(antipode, w, d, d);
      Vec rhs = counit(i) * h.unit();
      r = std::max(r, (lhs1 - rhs).norm());
      r = std::max(r, (lhs2 - rhs).norm());
    }
    if (r >= tol)
      throw ValidationError("AntipodeLawViolated",
                            "m(S (x) id)Delta = eps(.)1 = m(id (x) S)Delta", r);
  }

  g.algebra_ = std::make_shared<CStarAlgebra>(std::move(h));
  const CStarAlgebra& ha = *g.algebra_;
  g.comul_ = std::move(comul);
  g.counit_ = std::move(counit);
  g.antipode_ = std::move(antipode);

  RowVec hv = haar ? *haar : haar_state(ha, g.comul_, tol);
  {
    double r = std::abs((hv * ha.unit())(0) - 1.0);
    Mat hm(1, d);
    hm = hv;
    for (Index i = 0; i < d; ++i) {
      Vec w = g.comul_.col(i);
      r = std::max(r, (apply_leg1(hm, w, d, d) - Vec(hv(i) * ha.unit())).norm());
      r = std::max(r, (apply_leg2(hm, w, d, d) - Vec(hv(i) * ha.unit())).norm());
    }
    if (r >= tol)
      throw ValidationError("HaarNotInvariant",
                            "(h (x) id)Delta = h(.)1 = (id (x) h)Delta", r);
  }
  g.haar_ = check_functional(ha, hv, tol);
  if (!g.haar_.faithful)
    throw ValidationError("HaarNotFaithful", "Haar state must be faithful and positive",
                          g.haar_.min_gram_eigenvalue);

  // Dual algebra: transposed coproduct with the involution w*(x) = conj(w(S(x)*)).
  {
    Mat dual_mult = g.comul_.transpose();
    Mat q = ha.star_matrix() * g.antipode_.conjugate();
    Mat dual_star = q.adjoint();
    Vec dual_unit = g.counit_.transpose();
    try {
      g.dual_algebra_ = std::make_shared<CStarAlgebra>(CStarAlgebra::from_structure_constants(
          std::move(dual_mult), std::move(dual_star), std::move(dual_unit), {}, opt));
    } catch (const ValidationError& e) {
      throw ValidationError("DualAlgebraInvalid",
                            "dual algebra fails C*-validation: " + e.identity(), e.residual());
    }
  }

  g.rho_ = rho ? *rho : g.counit_;
  g.rho_trivial_ = (g.rho_ - g.counit_).norm() < tol;
  g.irreps_ = compute_irreps(ha, *g.dual_algebra_, g.rho_, tol);
  for (auto& u : g.irreps_) {
    u.corep_residual = corepresentation_residual(ha, g.comul_, u);
    double r = std::max(u.corep_residual, u.unitarity_residual);
    if (r >= std::sqrt(tol))
      throw ValidationError("IrrepInvalid",
                            "matrix coefficients fail unitary corepresentation laws", r);
  }

  double sq = 0.0;
  for (const auto& u : g.irreps_) sq += double(u.dim * u.dim);
  if (std::llround(sq) != d)
    throw ValidationError("DualAlgebraInvalid", "sum of squared irrep dimensions != dim", sq);

  for (const auto& u : g.irreps_) {
    const Mat& p = u.rho_matrix;
    double herm = (p - p.adjoint()).norm();
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (p + p.adjoint()));
    double mineig = es.eigenvalues().minCoeff();
    if (herm >= std::sqrt(tol) || mineig <= tol)
      throw ValidationError("RhoNotPositive", "pi_U(rho) must be positive invertible",
                            std::min(mineig, herm));
    double bal = std::abs(p.trace() - p.inverse().trace());
    if (bal >= std::sqrt(tol))
      throw ValidationError("RhoNotBalanced", "Tr pi_U(rho) = Tr pi_U(rho^-1)", bal);
  }

  // Unitary antipode. Equals S for trivial rho; in general the rho-twist acts
  // blockwise on matrix coefficients: R(u_ij) = sum (P^1/2)_kj u_kl* (P^-1/2)_il.
  if (g.rho_trivial_) {
    g.unitary_antipode_ = g.antipode_;
  } else {
    Mat basis(d, d);
    Mat target(d, d);
    Index col = 0;
    for (const auto& u : g.irreps_) {
      const Index n = u.dim;
      Mat pt = u.rho_matrix.transpose();
      Mat a = hermitian_sqrt(pt), b = hermitian_inv_sqrt(pt);
      std::vector<Vec> ustar(n * n);
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l) ustar[k * n + l] = ha.star(u.coefficient(k, l));
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
          basis.col(col) = u.coefficient(i, j);
          Vec t = Vec::Zero(d);
          for (Index k = 0; k < n; ++k)
            for (Index l = 0; l < n; ++l) t += a(k, j) * b(i, l) * ustar[k * n + l];
          target.col(col) = t;
          ++col;
        }
    }
    g.unitary_antipode_ = target * basis.inverse();
  }
  {
    const Mat& r = g.unitary_antipode_;
    double rr = (r * r - Mat::Identity(d, d)).norm();
    rr = std::max(rr, (r * ha.star_matrix() - ha.star_matrix() * r.conjugate()).norm());
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) {
        Vec lhs = r * ha.mult().col(i * d + j);
        Vec rhs = ha.multiply(r.col(j), r.col(i));
        rr = std::max(rr, (lhs - rhs).norm());
      }
    if (rr >= std::sqrt(tol))
      throw ValidationError("UnitaryAntipodeInvalid",
                            "R must be involutive, *-preserving and antimultiplicative", rr);
  }

  return g;
}

Mat FiniteQuantumGroup::rep_matrix(const UnitaryRepresentation& u, const RowVec& omega) const {
  Mat out(u.dim, u.dim);
  for (Index i = 0; i < u.dim; ++i)
    for (Index j = 0; j < u.dim; ++j) out(i, j) = (omega * u.coefficient(i, j))(0);
  return out;
}

UnitaryRepresentation FiniteQuantumGroup::tensor_rep(const UnitaryRepresentation& u,
                                                     const UnitaryRepresentation& v) const {
  UnitaryRepresentation t;
  t.dim = u.dim * v.dim;
  t.coeffs = Mat::Zero(t.dim * t.dim, dim());
  for (Index i = 0; i < u.dim; ++i)
    for (Index p = 0; p < v.dim; ++p)
      for (Index j = 0; j < u.dim; ++j)
        for (Index q = 0; q < v.dim; ++q) {
          Index row = (i * v.dim + p) * t.dim + (j * v.dim + q);
          t.coeffs.row(row) =
              algebra_->multiply(u.coefficient(i, j), v.coefficient(p, q)).transpose();
        }
  Mat p(t.dim, t.dim);
  for (Index i = 0; i < t.dim; ++i)
    for (Index j = 0; j < t.dim; ++j)
      p(i, j) = (rho_ * t.coeffs.row(i * t.dim + j).transpose())(0);
  t.rho_matrix = p;
  return t;
}

FiniteQuantumGroup build_function_algebra(const GroupTable& g, const Options& opt) {
  const int n = g.order;
  Mat mult = Mat::Zero(n, n * n);
  for (int i = 0; i < n; ++i) mult(i, i * n + i) = 1.0;
  Mat star = Mat::Identity(n, n);
  Vec unit = Vec::Ones(n);
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = "d" + std::to_string(i);
  auto h = CStarAlgebra::from_structure_constants(std::move(mult), std::move(star),
                                                  std::move(unit), std::move(labels), opt);
  Mat comul = Mat::Zero(n * n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) comul(a * n + b, g.table[a][b]) = 1.0;
  RowVec counit = RowVec::Zero(n);
  counit(g.identity) = 1.0;
  Mat antipode = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a) antipode(g.inverse[a], a) = 1.0;
  return FiniteQuantumGroup::validate(std::move(h), std::move(comul), std::move(counit),
                                      std::move(antipode), std::nullopt, std::nullopt, opt);
}

FiniteQuantumGroup build_group_algebra(const GroupTable& g, const Options& opt) {
  const int n = g.order;
  Mat mult = Mat::Zero(n, n * n);
  Mat star = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) mult(g.table[a][b], a * n + b) = 1.0;
    star(g.inverse[a], a) = 1.0;
  }
  Vec unit = Vec::Unit(n, g.identity);
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = "u" + std::to_string(i);
  auto h = CStarAlgebra::from_structure_constants(std::move(mult), std::move(star),
                                                  std::move(unit), std::move(labels), opt);
  Mat comul = Mat::Zero(n * n, n);
  for (int a = 0; a < n; ++a) comul(a * n + a, a) = 1.0;
  RowVec counit = RowVec::Ones(n);
  Mat antipode = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a) antipode(g.inverse[a], a) = 1.0;
  return FiniteQuantumGroup::validate(std::move(h), std::move(comul), std::move(counit),
                                      std::move(antipode), std::nullopt, std::nullopt, opt);
}

FiniteQuantumGroup dual_quantum_group(const FiniteQuantumGroup& g, const Options& opt) {
  const CStarAlgebra& h = g.algebra();
  Mat dual_mult = g.comul().transpose();
  Mat q = h.star_matrix() * g.antipode().conjugate();
  Mat dual_star = q.adjoint();
  Vec dual_unit = g.counit().transpose();
  auto dual_alg = CStarAlgebra::from_structure_constants(
      std::move(dual_mult), std::move(dual_star), std::move(dual_unit), {}, opt);
  Mat dual_comul = h.mult().transpose();
  RowVec dual_counit = h.unit().transpose();
  Mat dual_antipode = g.antipode().transpose();
  return FiniteQuantumGroup::validate(std::move(dual_alg), std::move(dual_comul),
                                      std::move(dual_counit), std::move(dual_antipode),
                                      std::nullopt, std::nullopt, opt);
}

double DoubleDualReport::max() const {
  return std::max({mult_residual, comul_residual, star_residual, antipode_residual});
}

DoubleDualReport double_dual_residuals(const FiniteQuantumGroup& g, const Options& opt) {
  auto dd = dual_quantum_group(dual_quantum_group(g, opt), opt);
  DoubleDualReport r;
  r.mult_residual = (dd.algebra().mult() - g.algebra().mult()).norm();
  r.comul_residual = (dd.comul() - g.comul()).norm();
  r.star_residual = (dd.algebra().star_matrix() - g.algebra().star_matrix()).norm();
  r.antipode_residual = (dd.antipode() - g.antipode()).norm();
  return r;
}

}  // namespace qgalois
