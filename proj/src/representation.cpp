#include "qgalois/hopf.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace qgalois {

// One unitary irreducible representation per Wedderburn block of the dual
// algebra: the block map w_k: H* -> Mat_n is a *-homomorphism, so the matrix
// of elements u_ij defined by omega(u_ij) = w_k(omega)_ij is a unitary
// corepresentation. Returned sorted by dimension, then by a rounded character
// fingerprint so that the order is reproducible.
std::vector<UnitaryRepresentation> compute_irreps(const CStarAlgebra& h,
                                                  const CStarAlgebra& dual_alg,
                                                  const RowVec& rho, double tol) {
  const Index d = h.dim();
  const auto& w = dual_alg.wedderburn();
  std::vector<UnitaryRepresentation> irreps;
  Index off = 0;
  for (Index n : w.blocks) {
    UnitaryRepresentation u;
    u.dim = n;
    u.coeffs = w.iso.middleRows(off, n * n);
    Mat p(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) p(i, j) = (rho * u.coefficient(i, j))(0);
    u.rho_matrix = p;

    double ur = 0.0;
    for (Index i = 0; i < n; ++i)
      for (Index k = 0; k < n; ++k) {
        Vec s = Vec::Zero(d);
        for (Index j = 0; j < n; ++j)
          s += h.multiply(u.coefficient(i, j), h.star(u.coefficient(k, j)));
        if (i == k) s -= h.unit();
        ur = std::max(ur, s.norm());
      }
    u.unitarity_residual = ur;
    (void)tol;

    off += n * n;
    irreps.push_back(std::move(u));
  }

  std::sort(irreps.begin(), irreps.end(),
            [](const UnitaryRepresentation& a, const UnitaryRepresentation& b) {
              if (a.dim != b.dim) return a.dim < b.dim;
              Vec ca = a.character(), cb = b.character();
              for (Index i = 0; i < ca.size(); ++i) {
                auto ra = std::llround(ca(i).real() * 1e6);
                auto rb = std::llround(cb(i).real() * 1e6);
                if (ra != rb) return ra < rb;
                auto ia = std::llround(ca(i).imag() * 1e6);
                auto ib = std::llround(cb(i).imag() * 1e6);
                if (ia != ib) return ia < ib;
              }
              return false;
            });
  return irreps;
}

double corepresentation_residual(const CStarAlgebra& h, const Mat& comul,
                                 const UnitaryRepresentation& u) {
  const Index d = h.dim(), n = u.dim;
  double r = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Vec lhs = comul * u.coefficient(i, j);
      Vec rhs = Vec::Zero(d * d);
      for (Index k = 0; k < n; ++k)
        rhs += kron(Mat(u.coefficient(i, k)), Mat(u.coefficient(k, j)));
      r = std::max(r, (lhs - rhs).norm());
    }
  return r;
}

double unitarity_residual(const CStarAlgebra& h, const UnitaryRepresentation& u) {
  const Index n = u.dim;
  double r = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < n; ++k) {
      Vec s = Vec::Zero(h.dim());
      for (Index j = 0; j < n; ++j)
        s += h.multiply(u.coefficient(i, j), h.star(u.coefficient(k, j)));
      if (i == k) s -= h.unit();
      r = std::max(r, s.norm());
    }
  return r;
}

StandardSolution standard_solution(const Mat& rho_matrix, double tol) {
  const Index n = rho_matrix.rows();
  double herm = (rho_matrix - rho_matrix.adjoint()).norm();
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho_matrix + rho_matrix.adjoint()));
  double mineig = es.eigenvalues().minCoeff();
  if (herm >= std::sqrt(tol) || mineig <= tol)
    throw ValidationError("RhoNotPositive", "rho matrix must be positive invertible",
                          std::min(mineig, herm));

  Mat half = hermitian_sqrt(rho_matrix);
  Mat invhalf = hermitian_inv_sqrt(rho_matrix);

  StandardSolution s;
  // R(1)(i,j) = (rho^-1/2)_ji and Rbar(1)(i,j) = (rho^1/2)_ij so that
  // (id (x) xi*) R(1) = conj(rho^-1/2 xi).
  s.r1 = as_vector(Mat(invhalf.transpose()));
  s.rbar1 = as_vector(half);
  s.dim_q = rho_matrix.trace().real();
  s.balancing_residual = std::abs(rho_matrix.trace() - rho_matrix.inverse().trace());

  Mat r1m = as_matrix(s.r1, n, n);
  Mat rbm = as_matrix(s.rbar1, n, n);
  Mat t1 = (r1m.conjugate() * rbm).transpose();
  Mat t2 = (rbm.conjugate() * r1m).transpose();
  s.conjugate_equations_residual = std::max((t1 - Mat::Identity(n, n)).norm(),
                                            (t2 - Mat::Identity(n, n)).norm());
  return s;
}

ConjugateReport conjugate_representation(const FiniteQuantumGroup& g,
                                         const UnitaryRepresentation& u) {
  const CStarAlgebra& h = g.algebra();
  const Index n = u.dim, d = g.dim();
  ConjugateReport rep;
  rep.solution = standard_solution(u.rho_matrix, g.options().tol);

  // Ubar = (j(rho)^1/2 (x) 1) U^c (j(rho)^-1/2 (x) 1) with (U^c)_ij = u_ij*
  // and j(T) = T^t on the conjugate coordinates.
  Mat pt = u.rho_matrix.transpose();
  Mat a = hermitian_sqrt(pt), b = hermitian_inv_sqrt(pt);
  std::vector<Vec> ustar(n * n);
  for (Index k = 0; k < n; ++k)
    for (Index l = 0; l < n; ++l) ustar[k * n + l] = h.star(u.coefficient(k, l));

  UnitaryRepresentation conj;
  conj.dim = n;
  conj.coeffs = Mat::Zero(n * n, d);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Vec t = Vec::Zero(d);
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l) t += a(i, k) * b(l, j) * ustar[k * n + l];
      conj.coeffs.row(i * n + j) = t.transpose();
    }
  Mat p(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) p(i, j) = (g.rho() * conj.coefficient(i, j))(0);
  conj.rho_matrix = p;
  conj.unitarity_residual = unitarity_residual(h, conj);
  conj.corep_residual = corepresentation_residual(h, g.comul(), conj);
  rep.conjugate = std::move(conj);

  // R(1) is an invariant vector of Ubar (x) U.
  auto tens = g.tensor_rep(rep.conjugate, u);
  const Index m = tens.dim;
  double inv = 0.0;
  for (Index r = 0; r < m; ++r) {
    Vec w = Vec::Zero(d);
    for (Index c = 0; c < m; ++c) w += rep.solution.r1(c) * tens.coeffs.row(r * m + c).transpose();
    w -= rep.solution.r1(r) * h.unit();
    inv = std::max(inv, w.norm());
  }
  rep.invariance_residual = inv;
  return rep;
}

}  // namespace qgalois
