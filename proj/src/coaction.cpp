#include "qgalois/coaction.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace qgalois {

namespace {

constexpr Index kExactPairLimit = 300;   // exhaustive product checks up to this codomain size
constexpr int kSampleCount = 64;

}  // namespace

Vec CoAction::codomain_multiply(const Vec& u, const Vec& v) const {
  if (side_ == Side::Left) return tensor_algebra_multiply(hopf_->algebra(), *algebra_, u, v);
  return tensor_algebra_multiply(*algebra_, hopf_->algebra(), u, v);
}

CoAction CoAction::validate(std::shared_ptr<const CStarAlgebra> a,
                            std::shared_ptr<const FiniteQuantumGroup> g, Side side, Mat map,
                            const Options& opt) {
  const Index da = a->dim(), dh = g->dim();
  const double tol = opt.tol;
  if (map.rows() != da * dh || map.cols() != da)
    throw ValidationError("DimensionMismatch", "coaction map shape", 0.0);

  CoAction c;
  c.algebra_ = std::move(a);
  c.hopf_ = std::move(g);
  c.side_ = side;
  c.map_ = std::move(map);
  c.opt_ = opt;
  const CStarAlgebra& alg = *c.algebra_;
  const FiniteQuantumGroup& fqg = *c.hopf_;
  const Mat& al = c.map_;
  const bool left = side == Side::Left;
  double worst = 0.0;

  {
    Vec target = left ? kron(fqg.algebra().unit(), alg.unit())
                      : kron(alg.unit(), fqg.algebra().unit());
    double r = (al * alg.unit() - target).norm();
    if (r >= tol) throw ValidationError("CoactionNotUnital", "alpha(1) = 1 (x) 1", r);
    worst = std::max(worst, r);
  }
  {
    Index rank = numerical_rank(al, tol);
    if (rank != da)
      throw ValidationError("CoactionNotInjective", "alpha must be injective",
                            double(da - rank));
  }
  {
    // *-homomorphism
    double r = 0.0;
    Mat star_cod = left ? kron(fqg.algebra().star_matrix(), alg.star_matrix())
                        : kron(alg.star_matrix(), fqg.algebra().star_matrix());
    for (Index i = 0; i < da; ++i) {
      Vec lhs = al * alg.star_matrix().col(i);
      Vec rhs = star_cod * Vec(al.col(i).conjugate());
      r = std::max(r, (lhs - rhs).norm());
    }
    bool sampled = da * dh > kExactPairLimit;
    if (!sampled) {
      for (Index i = 0; i < da; ++i)
        for (Index j = 0; j < da; ++j) {
          Vec lhs = al * alg.mult().col(i * da + j);
          Vec rhs = c.codomain_multiply(al.col(i), al.col(j));
          r = std::max(r, (lhs - rhs).norm());
        }
    } else {
      Rng rng(opt.seed + 5);
      for (int s = 0; s < kSampleCount; ++s) {
        Vec u = rng.vec(da), v = rng.vec(da);
        Vec lhs = al * alg.multiply(u, v);
        Vec rhs = c.codomain_multiply(al * u, al * v);
        r = std::max(r, (lhs - rhs).norm() / (1.0 + u.norm() * v.norm()));
      }
    }
    if (r >= tol)
      throw ValidationError("CoactionNotStarHom",
                            "alpha(xy) = alpha(x)alpha(y) and alpha(x*) = alpha(x)*", r);
    worst = std::max(worst, r);
  }
  {
    // coaction law and counit law
    double r = 0.0, rc = 0.0;
    Mat eps(1, dh);
    eps = fqg.counit();
    for (Index i = 0; i < da; ++i) {
      Vec w = al.col(i);
      if (left) {
        Vec lhs = apply_leg1(fqg.comul(), w, dh, da);
        Vec rhs = apply_leg2(al, w, dh, da);
        r = std::max(r, (lhs - rhs).norm());
        rc = std::max(rc, (apply_leg1(eps, w, dh, da) - Vec(Vec::Unit(da, i))).norm());
      } else {
        Vec lhs = apply_leg1(al, w, da, dh);
        Vec rhs = apply_leg2(fqg.comul(), w, da, dh);
        r = std::max(r, (lhs - rhs).norm());
        rc = std::max(rc, (apply_leg2(eps, w, da, dh) - Vec(Vec::Unit(da, i))).norm());
      }
    }
    if (r >= tol)
      throw ValidationError("CoassociativityError",
                            left ? "(Delta (x) id)alpha = (id (x) alpha)alpha"
                                 : "(alpha (x) id)alpha = (id (x) Delta)alpha",
                            r);
    if (rc >= tol)
      throw ValidationError("CounitLawViolated", "counit slice of alpha is the identity", rc);
    worst = std::max(worst, std::max(r, rc));
  }

  // Fixed points and conditional expectation.
  {
    Mat embed(da * dh, da);
    for (Index j = 0; j < da; ++j)
      embed.col(j) = left ? kron(fqg.algebra().unit(), Vec(Vec::Unit(da, j)))
                          : kron(Vec(Vec::Unit(da, j)), fqg.algebra().unit());
    c.fixed_basis_ = kernel(Mat(al - embed), tol).basis;

    Mat e(da, da);
    Mat h(1, dh);
    h = fqg.haar().coeffs;
    for (Index i = 0; i < da; ++i)
      e.col(i) = left ? apply_leg1(h, al.col(i), dh, da) : apply_leg2(h, al.col(i), da, dh);
    c.expectation_ = e;

    double r = (e * e - e).norm();
    r = std::max(r, (e * alg.unit() - alg.unit()).norm());
    r = std::max(r, (e * alg.star_matrix() - alg.star_matrix() * e.conjugate()).norm());
    // range(E) is the fixed algebra
    Mat pfix = c.fixed_basis_ * c.fixed_basis_.adjoint();
    r = std::max(r, (pfix * e - e).norm());
    if (numerical_rank(e, tol) != c.fixed_basis_.cols())
      throw ValidationError("ExpectationInvalid", "rank E != dim A^G", double(0));
    // positivity probes through the multimatrix model
    Rng rng(opt.seed + 7);
    for (int s = 0; s < 6; ++s) {
      Vec b = rng.vec(da);
      Vec v = e * alg.multiply(alg.star(b), b);
      Vec w = alg.wedderburn().iso * v;
      Index off = 0;
      for (Index n : alg.wedderburn().blocks) {
        Mat blockm = as_matrix(w.segment(off, n * n), n, n);
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (blockm + blockm.adjoint()));
        double mineig = es.eigenvalues().minCoeff();
        if (mineig < -std::sqrt(tol) * (1.0 + b.squaredNorm()))
          throw ValidationError("ExpectationNotPositive", "E(b* b) >= 0", -mineig);
        off += n * n;
      }
    }
    if (r >= std::sqrt(tol))
      throw ValidationError("ExpectationInvalid",
                            "E must be an idempotent unital *-map onto A^G", r);
    worst = std::max(worst, r);
  }
  c.validation_residual_ = worst;
  return c;
}

CoAction translation_coaction(std::shared_ptr<const FiniteQuantumGroup> g, Side side,
                              const Options& opt) {
  Mat map = g->comul();
  auto alg = g->algebra_ptr();
  return CoAction::validate(alg, std::move(g), side, std::move(map), opt);
}

CoAction trivial_coaction(std::shared_ptr<const CStarAlgebra> a,
                          std::shared_ptr<const FiniteQuantumGroup> g, Side side,
                          const Options& opt) {
  const Index da = a->dim(), dh = g->dim();
  Mat map(da * dh, da);
  for (Index j = 0; j < da; ++j)
    map.col(j) = side == Side::Left ? kron(g->algebra().unit(), Vec(Vec::Unit(da, j)))
                                    : kron(Vec(Vec::Unit(da, j)), g->algebra().unit());
  return CoAction::validate(std::move(a), std::move(g), side, std::move(map), opt);
}

// Columns of the Galois map a (x) b -> alpha(a)(1 (x) b) (left) resp.
// alpha(a)(b (x) 1) (right).
static Mat galois_matrix(const CoAction& c) {
  const CStarAlgebra& a = c.algebra();
  const Index da = a.dim(), dh = c.hopf().dim();
  Mat gal(da * dh, da * da);
  for (Index i = 0; i < da; ++i) {
    Vec ai = c.map().col(i);
    for (Index j = 0; j < da; ++j) {
      const Mat& rj = a.right_mult_basis(j);
      gal.col(i * da + j) = c.side() == Side::Left ? apply_leg2(rj, ai, dh, da)
                                                   : apply_leg1(rj, ai, da, dh);
    }
  }
  return gal;
}

FreenessReport is_free_galois(const CoAction& c) {
  Mat gal = galois_matrix(c);
  FreenessReport r;
  r.expected_rank = c.hopf().dim() * c.algebra().dim();
  r.rank = numerical_rank(gal, c.options().tol);
  r.free = r.rank == r.expected_rank;
  return r;
}

// A-valued inner product sum_q z_q* E(b_p* b_q)-style contraction for vectors
// in Span (x) A; `metric(p,q)` supplies the middle A-element.
template <typename Metric>
static Vec module_inner(const CStarAlgebra& a, const Mat& zrows, const Mat& wrows,
                        Metric&& metric) {
  Vec out = Vec::Zero(a.dim());
  for (Index p = 0; p < zrows.rows(); ++p)
    for (Index q = 0; q < wrows.rows(); ++q) {
      Vec zp = a.star(zrows.row(p).transpose());
      Vec mid = metric(p, q);
      if (mid.isZero(0.0)) continue;
      out += a.multiply(a.multiply(zp, mid), wrows.row(q).transpose());
    }
  return out;
}

Mat module_invariants(const CoAction& c, const UnitaryRepresentation& u) {
  const CStarAlgebra& a = c.algebra();
  const CStarAlgebra& h = c.hopf().algebra();
  const Index da = a.dim(), dh = h.dim(), n = u.dim;
  const bool left = c.side() == Side::Left;

  if (left) {
    // Combined left coaction on H_U (x) A from delta_U(e_i) = sum_j u_ij* (x) e_j.
    Mat delta(dh * n * da, n * da);
    std::vector<Mat> lu(n * n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        lu[i * n + j] = h.left_mult(h.star(u.coefficient(i, j)));
    for (Index i = 0; i < n; ++i)
      for (Index m = 0; m < da; ++m) {
        Mat am = as_matrix(c.map().col(m), dh, da);
        Vec col = Vec::Zero(dh * n * da);
        for (Index j = 0; j < n; ++j) {
          Mat block = lu[i * n + j] * am;  // dh x da
          for (Index g = 0; g < dh; ++g)
            col.segment((g * n + j) * da, da) += block.row(g).transpose();
        }
        delta.col(i * da + m) = col;
      }
    Mat embed(dh * n * da, n * da);
    for (Index k = 0; k < n * da; ++k)
      embed.col(k) = kron(h.unit(), Vec(Vec::Unit(n * da, k)));
    return kernel(Mat(delta - embed), c.options().tol).basis;
  }
  // right: delta_U(e_j) = sum_i e_i (x) u_ij, codomain H_U (x) A (x) H
  Mat deltar(n * da * dh, n * da);
  std::vector<Mat> lu(n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) lu[i * n + j] = h.left_mult(u.coefficient(i, j));
  for (Index j = 0; j < n; ++j)
    for (Index m = 0; m < da; ++m) {
      Mat am = as_matrix(c.map().col(m), da, dh);  // A (x) H slices
      Vec col = Vec::Zero(n * da * dh);
      for (Index i = 0; i < n; ++i) {
        Mat block = am * lu[i * n + j].transpose();  // da x dh
        for (Index aa = 0; aa < da; ++aa)
          col.segment((i * da + aa) * dh, dh) += block.row(aa).transpose();
      }
      deltar.col(j * da + m) = col;
    }
  Mat embed(n * da * dh, n * da);
  for (Index k = 0; k < n * da; ++k)
    embed.col(k) = kron(Vec(Vec::Unit(n * da, k)), h.unit());
  return kernel(Mat(deltar - embed), c.options().tol).basis;
}

SpectralSubspaceReport spectral_subspace(const CoAction& c, const UnitaryRepresentation& u) {
  const CStarAlgebra& a = c.algebra();
  const CStarAlgebra& h = c.hopf().algebra();
  const Index da = a.dim(), dh = h.dim();
  const double tol = c.options().tol;
  const bool left = c.side() == Side::Left;

  Mat coeffspan = u.coeffs.transpose();  // dh x n^2, columns u_ij
  Mat su = column_space(coeffspan, tol);
  const Index r = su.cols();
  Mat q = Mat::Identity(dh, dh) - su * su.adjoint();

  // A_U = {a : alpha(a) in C[G]_U (x) A}
  Mat constraint(dh * da, da);
  for (Index i = 0; i < da; ++i)
    constraint.col(i) = left ? apply_leg1(q, c.map().col(i), dh, da)
                             : apply_leg2(q, c.map().col(i), da, dh);
  Mat bu = kernel(constraint, tol).basis;
  const Index m = bu.cols();

  SpectralSubspaceReport rep;
  rep.dim_subspace = m;
  rep.expected_rank = r * da;

  // Localized Galois map into C[G]_U (x) A coordinates.
  Mat gal(r * da, m * da);
  for (Index p = 0; p < m; ++p) {
    Vec ap = c.map() * bu.col(p);
    for (Index j = 0; j < da; ++j) {
      Vec w = left ? apply_leg2(a.right_mult_basis(j), ap, dh, da)
                   : apply_leg1(a.right_mult_basis(j), ap, da, dh);
      // uniform (h, a) layout: swap the right-side coordinates
      if (!left) w = as_vector(as_matrix(w, da, dh).transpose());
      gal.col(p * da + j) = apply_leg1(su.adjoint(), w, dh, da);
    }
  }
  rep.rank = numerical_rank(gal, tol);
  rep.surjective = rep.rank == rep.expected_rank;

  // Inner products: domain <b_p (x) x, b_q (x) y>_A = x* E(b_p* b_q) y,
  // target <s_c (x) x, s_d (x) y>_A = haar(s_c* s_d) x* y.
  Mat emid(m * m, da);
  for (Index p = 0; p < m; ++p)
    for (Index q2 = 0; q2 < m; ++q2)
      emid.row(p * m + q2) =
          (c.conditional_expectation() * a.multiply(a.star(bu.col(p)), bu.col(q2)))
              .transpose();
  Mat gh(r, r);
  for (Index cc = 0; cc < r; ++cc)
    for (Index dd = 0; dd < r; ++dd)
      gh(cc, dd) = c.hopf().haar().value(h.multiply(h.star(su.col(cc)), su.col(dd)));

  auto domain_inner = [&](const Vec& z, const Vec& w) {
    Mat zr = as_matrix(z, m, da), wr = as_matrix(w, m, da);
    return module_inner(a, zr, wr, [&](Index p, Index q2) {
      return Vec(emid.row(p * m + q2).transpose());
    });
  };
  auto target_inner = [&](const Vec& z, const Vec& w) {
    Mat zr = as_matrix(z, r, da), wr = as_matrix(w, r, da);
    return module_inner(a, zr, wr, [&](Index p, Index q2) {
      return Vec(gh(p, q2) * a.unit());
    });
  };

  double res = 0.0;
  if (m > 0) {
    const Index dom = m * da;
    rep.sampled = dom > 96;
    if (!rep.sampled) {
      for (Index z = 0; z < dom; ++z)
        for (Index w = z; w < dom; ++w) {
          Vec ez = Vec::Unit(dom, z), ew = Vec::Unit(dom, w);
          Vec lhs = target_inner(gal.col(z), gal.col(w));
          Vec rhs = domain_inner(ez, ew);
          res = std::max(res, (lhs - rhs).norm());
        }
    } else {
      Rng rng(c.options().seed + 11);
      for (int s = 0; s < kSampleCount; ++s) {
        Vec z = rng.vec(dom), w = rng.vec(dom);
        Vec lhs = target_inner(gal * z, gal * w);
        Vec rhs = domain_inner(z, w);
        res = std::max(res, (lhs - rhs).norm() / (1.0 + z.norm() * w.norm()));
      }
    }
  }
  rep.isometry_residual = res;
  rep.defect = std::max(res, rep.surjective ? 0.0 : 1.0);
  return rep;
}

SpectralFunctorReport spectral_functor_defect(const CoAction& c, const UnitaryRepresentation& u,
                                              const UnitaryRepresentation& v) {
  const CStarAlgebra& a = c.algebra();
  const double tol = c.options().tol;
  const Index da = a.dim();
  const bool left = c.side() == Side::Left;

  Mat fu = module_invariants(c, u);
  Mat fv = module_invariants(c, v);
  UnitaryRepresentation uv = left ? c.hopf().tensor_rep(u, v) : c.hopf().tensor_rep(v, u);
  Mat fuv = module_invariants(c, uv);

  SpectralFunctorReport rep;
  rep.dim_fu = fu.cols();
  rep.dim_fv = fv.cols();
  rep.dim_fuv = fuv.cols();

  const Index nu = u.dim, nv = v.dim;
  // F2 into F(U (x) V) coordinates; x_13 y_23 for left coactions, x_23 y_13
  // (landing in H_V (x) H_U (x) A) for right ones.
  Mat f2 = Mat::Zero(fuv.cols(), fu.cols() * fv.cols());
  double oos = 0.0;
  Mat pfuv = fuv * fuv.adjoint();
  for (Index s = 0; s < fu.cols(); ++s) {
    Mat xs = as_matrix(fu.col(s), nu, da);
    for (Index t = 0; t < fv.cols(); ++t) {
      Mat yt = as_matrix(fv.col(t), nv, da);
      Vec z = Vec::Zero(nu * nv * da);
      for (Index i = 0; i < nu; ++i)
        for (Index p = 0; p < nv; ++p) {
          Vec prod = a.multiply(xs.row(i).transpose(), yt.row(p).transpose());
          Index slot = left ? i * nv + p : p * nu + i;
          z.segment(slot * da, da) += prod;
        }
      oos = std::max(oos, (z - pfuv * z).norm());
      f2.col(s * fv.cols() + t) = fuv.adjoint() * z;
    }
  }
  rep.out_of_space_residual = oos;
  rep.cokernel_dim = rep.dim_fuv - numerical_rank(f2, tol);

  // Isometry of F2 for the B-valued inner products: on F(U),
  // <x, x'>_B = sum_i x_i* x'_i, and on the balanced product
  // <x (x) y, x' (x) y'> = sum_p y_p* <x,x'> y'_p.
  auto fiber_inner = [&](const Mat& z, const Mat& w) {
    Vec out = Vec::Zero(da);
    for (Index i = 0; i < z.rows(); ++i)
      out += a.multiply(a.star(z.row(i).transpose()), w.row(i).transpose());
    return out;
  };
  double res = 0.0;
  const Index pairs = fu.cols() * fv.cols();
  rep.sampled = pairs > 64;
  Rng rng(c.options().seed + 13);
  Index count = rep.sampled ? kSampleCount : pairs * pairs;
  for (Index step = 0; step < count; ++step) {
    Index s1, t1, s2, t2;
    if (rep.sampled) {
      s1 = rng.uniform_index(fu.cols());
      t1 = rng.uniform_index(fv.cols());
      s2 = rng.uniform_index(fu.cols());
      t2 = rng.uniform_index(fv.cols());
    } else {
      Index p1 = step / pairs, p2 = step % pairs;
      s1 = p1 / fv.cols();
      t1 = p1 % fv.cols();
      s2 = p2 / fv.cols();
      t2 = p2 % fv.cols();
    }
    Mat x1 = as_matrix(fu.col(s1), nu, da), y1 = as_matrix(fv.col(t1), nv, da);
    Mat x2 = as_matrix(fu.col(s2), nu, da), y2 = as_matrix(fv.col(t2), nv, da);
    // <x1 (x) y1, x2 (x) y2>
    Vec mid = fiber_inner(x1, x2);
    Vec dom = Vec::Zero(da);
    for (Index p = 0; p < nv; ++p)
      dom += a.multiply(a.multiply(a.star(y1.row(p).transpose()), mid),
                        y2.row(p).transpose());
    // target inner product of the images
    Vec img1 = fuv * f2.col(s1 * fv.cols() + t1);
    Vec img2 = fuv * f2.col(s2 * fv.cols() + t2);
    Mat m1 = as_matrix(img1, nu * nv, da), m2 = as_matrix(img2, nu * nv, da);
    Vec tgt = fiber_inner(m1, m2);
    res = std::max(res, (tgt - dom).norm());
  }
  rep.isometry_residual = res;
  return rep;
}

Mat rho_action_matrix(const CoAction& c) {
  const Index da = c.algebra().dim(), dh = c.hopf().dim();
  Mat p(da, da);
  Mat w(1, dh);
  if (c.side() == Side::Right) {
    w = c.hopf().rho();
    for (Index i = 0; i < da; ++i) p.col(i) = apply_leg2(w, c.map().col(i), da, dh);
  } else {
    // converted right action on A^op: slice by rho o R on the H leg
    w = c.hopf().rho() * c.hopf().unitary_antipode();
    for (Index i = 0; i < da; ++i) p.col(i) = apply_leg1(w, c.map().col(i), dh, da);
  }
  return p;
}

CanonicalStateReport canonical_state(const CoAction& c) {
  const CStarAlgebra& a = c.algebra();
  const Index da = a.dim(), dh = c.hopf().dim();
  const double tol = c.options().tol;
  const bool left = c.side() == Side::Left;

  Mat p = rho_action_matrix(c);
  Cplx dq = p.trace();
  if (std::abs(dq.imag()) > tol || dq.real() <= tol)
    throw ValidationError("QScalarFailed", "dim_q A = Tr pi_alpha(rho) must be positive",
                          std::abs(dq.imag()));

  CanonicalStateReport rep;
  rep.dim_q = dq.real();
  RowVec phi(da);
  for (Index i = 0; i < da; ++i) {
    // left multiplication on the opposite algebra is right multiplication
    const Mat& l = left ? a.right_mult_basis(i) : a.left_mult_basis(i);
    phi(i) = l.transpose().cwiseProduct(p).sum() / dq;
  }

  // invariance on the original side
  double inv = 0.0;
  Mat phim(1, da);
  phim = phi;
  for (Index i = 0; i < da; ++i) {
    Vec w = c.map().col(i);
    Vec slice = left ? apply_leg2(phim, w, dh, da) : apply_leg1(phim, w, da, dh);
    inv = std::max(inv, (slice - phi(i) * c.hopf().algebra().unit()).norm());
  }
  rep.invariance_residual = inv;
  if (inv >= std::sqrt(tol))
    throw ValidationError("NotInvariant", "canonical state is not coaction-invariant", inv);

  rep.state = check_functional(a, phi, tol);
  if (!rep.state.faithful || std::abs(rep.state.value(a.unit()) - 1.0) > std::sqrt(tol))
    throw ValidationError("NotInvariant", "canonical state must be a faithful state",
                          rep.state.min_gram_eigenvalue);

  auto frob = frobenius_report(a, rep.state, c.options());
  rep.q_scalar = frob.q_scalar.value_or(0.0);
  rep.q_residual = frob.q_residual;
  if (!frob.q_scalar || std::abs(*frob.q_scalar - rep.dim_q) > std::sqrt(tol) * rep.dim_q)
    throw ValidationError("QScalarFailed", "m m* = (dim_q A) id for the canonical state",
                          frob.q_residual);
  return rep;
}

double kms_residual(const CoAction& c, const Functional& phi) {
  return kms_residual(c.algebra(), phi.coeffs, rho_action_matrix(c));
}

CoAction convert_side(const CoAction& c) {
  const Index da = c.algebra().dim(), dh = c.hopf().dim();
  auto op = std::make_shared<CStarAlgebra>(opposite_algebra(c.algebra(), c.options()));
  const Mat& r = c.hopf().unitary_antipode();
  Mat map(da * dh, da);
  for (Index i = 0; i < da; ++i) {
    if (c.side() == Side::Left) {
      // H (x) A -> A (x) H then id (x) R
      Vec swapped = as_vector(as_matrix(c.map().col(i), dh, da).transpose());
      map.col(i) = apply_leg2(r, swapped, da, dh);
    } else {
      Vec swapped = as_vector(as_matrix(c.map().col(i), da, dh).transpose());
      map.col(i) = apply_leg1(r, swapped, dh, da);
    }
  }
  Side new_side = c.side() == Side::Left ? Side::Right : Side::Left;
  return CoAction::validate(std::move(op), c.hopf_ptr(), new_side, std::move(map),
                            c.options());
}

}  // namespace qgalois
