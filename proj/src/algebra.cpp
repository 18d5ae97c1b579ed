#include "qgalois/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace qgalois {

// wedderburn.cpp
WedderburnForm wedderburn_decompose_impl(const Mat& mult, const Mat& star, const Vec& unit,
                                         const std::vector<Mat>& lmats,
                                         const std::vector<Mat>& rmats, const Options& opt);

namespace {

constexpr Index kExactMultCheckDim = 48;

std::vector<Mat> build_side_mults(const Mat& mult, Index dim, bool left) {
  std::vector<Mat> mats(dim, Mat::Zero(dim, dim));
  // c_ijk = mult(k, i*dim+j): L_i(k,j) = c_ijk, R_j(k,i) = c_ijk.
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j)
      for (Index k = 0; k < dim; ++k) {
        Cplx c = mult(k, i * dim + j);
        if (left)
          mats[i](k, j) += c;
        else
          mats[j](k, i) += c;
      }
  return mats;
}

}  // namespace

CStarAlgebra CStarAlgebra::from_structure_constants(Mat mult, Mat star, Vec unit,
                                                    std::vector<std::string> labels,
                                                    const Options& opt) {
  CStarAlgebra a;
  a.dim_ = unit.size();
  const Index d = a.dim_;
  if (mult.rows() != d || mult.cols() != d * d || star.rows() != d || star.cols() != d)
    throw ValidationError("DimensionMismatch", "structure constant shapes", 0.0);
  a.mult_ = std::move(mult);
  a.star_ = std::move(star);
  a.unit_ = std::move(unit);
  a.labels_ = std::move(labels);
  a.opt_ = opt;
  a.lmats_ = build_side_mults(a.mult_, d, true);
  a.rmats_ = build_side_mults(a.mult_, d, false);

  double scale = std::max(1.0, a.mult_.cwiseAbs().maxCoeff());
  double tol = opt.tol * scale;
  double worst = 0.0;

  // Associativity: (x_i x_j) x_k = x_i (x_j x_k). Exhaustive for small
  // dimensions, randomized probes above kExactMultCheckDim.
  double assoc = 0.0;
  if (d <= kExactMultCheckDim) {
    for (Index i = 0; i < d && assoc < 1e6 * tol; ++i)
      for (Index j = 0; j < d; ++j) {
        Vec ij = a.mult_.col(i * d + j);
        for (Index k = 0; k < d; ++k) {
          Vec lhs = a.rmats_[k] * ij;
          Vec rhs = a.lmats_[i] * a.mult_.col(j * d + k);
          assoc = std::max(assoc, (lhs - rhs).norm());
        }
      }
  } else {
    a.mult_check_sampled_ = true;
    Rng rng(opt.seed + 17);
    for (int s = 0; s < 256; ++s) {
      Index i = rng.uniform_index(d), j = rng.uniform_index(d), k = rng.uniform_index(d);
      Vec lhs = a.rmats_[k] * a.mult_.col(i * d + j);
      Vec rhs = a.lmats_[i] * a.mult_.col(j * d + k);
      assoc = std::max(assoc, (lhs - rhs).norm());
    }
    for (int s = 0; s < 4; ++s) {
      Vec u = rng.vec(d), v = rng.vec(d), w = rng.vec(d);
      Vec lhs = a.multiply(a.multiply(u, v), w);
      Vec rhs = a.multiply(u, a.multiply(v, w));
      assoc = std::max(assoc, (lhs - rhs).norm() / (1.0 + u.norm() * v.norm() * w.norm()));
    }
  }
  if (assoc >= tol)
    throw ValidationError("NotAssociative", "(x_i x_j) x_k = x_i (x_j x_k)", assoc);
  worst = std::max(worst, assoc);

  // Two-sided unit.
  double unit_res = std::max((a.left_mult(a.unit_) - Mat::Identity(d, d)).norm(),
                             (a.right_mult(a.unit_) - Mat::Identity(d, d)).norm());
  if (unit_res >= tol) throw ValidationError("NoUnit", "1 x = x = x 1", unit_res);
  worst = std::max(worst, unit_res);

  // Involution: antilinear, involutive, antimultiplicative, unital.
  double inv_res = (a.star_ * a.star_.conjugate() - Mat::Identity(d, d)).norm();
  double unital_star = (a.star(a.unit_) - a.unit_).norm();
  double antimult = 0.0;
  if (d <= kExactMultCheckDim) {
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) {
        Vec lhs = a.star(a.mult_.col(i * d + j));
        Vec rhs = a.multiply(a.star_.col(j), a.star_.col(i));
        antimult = std::max(antimult, (lhs - rhs).norm());
      }
  } else {
    Rng rng(opt.seed + 31);
    for (int s = 0; s < 256; ++s) {
      Index i = rng.uniform_index(d), j = rng.uniform_index(d);
      Vec lhs = a.star(a.mult_.col(i * d + j));
      Vec rhs = a.multiply(a.star_.col(j), a.star_.col(i));
      antimult = std::max(antimult, (lhs - rhs).norm());
    }
  }
  double star_res = std::max({inv_res, unital_star, antimult});
  if (star_res >= tol)
    throw ValidationError("NotInvolutive", "x** = x, (xy)* = y* x*, 1* = 1", star_res);
  worst = std::max(worst, star_res);

  a.wedderburn_ = wedderburn_decompose_impl(a.mult_, a.star_, a.unit_, a.lmats_, a.rmats_, opt);
  a.validation_residual_ = std::max(worst, a.wedderburn_.residual);
  return a;
}

Vec CStarAlgebra::multiply(const Vec& a, const Vec& b) const {
  Vec out = Vec::Zero(dim_);
  for (Index i = 0; i < dim_; ++i)
    if (a(i) != 0.0) out += a(i) * (lmats_[i] * b);
  return out;
}

Vec CStarAlgebra::star(const Vec& a) const { return star_ * a.conjugate(); }

Mat CStarAlgebra::left_mult(const Vec& a) const {
  Mat out = Mat::Zero(dim_, dim_);
  for (Index i = 0; i < dim_; ++i)
    if (a(i) != 0.0) out += a(i) * lmats_[i];
  return out;
}

Mat CStarAlgebra::right_mult(const Vec& a) const {
  Mat out = Mat::Zero(dim_, dim_);
  for (Index i = 0; i < dim_; ++i)
    if (a(i) != 0.0) out += a(i) * rmats_[i];
  return out;
}

RowVec CStarAlgebra::regular_trace() const {
  RowVec t(dim_);
  for (Index i = 0; i < dim_; ++i) t(i) = lmats_[i].trace();
  return t;
}

Mat gram_matrix(const CStarAlgebra& a, const RowVec& coeffs) {
  const Index d = a.dim();
  Mat g(d, d);
  for (Index i = 0; i < d; ++i) {
    RowVec row = coeffs * a.left_mult(a.star_matrix().col(i));
    g.row(i) = row;
  }
  return g;
}

Functional check_functional(const CStarAlgebra& a, const RowVec& coeffs, double tol) {
  Functional f;
  f.coeffs = coeffs;
  Mat g = gram_matrix(a, coeffs);
  f.hermitian_residual = (g - g.adjoint()).norm();
  f.hermitian = f.hermitian_residual < tol * std::max(1.0, g.norm());
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (g + g.adjoint()));
  f.min_gram_eigenvalue = es.eigenvalues().minCoeff();
  f.positive = f.hermitian && f.min_gram_eigenvalue > -tol;
  f.faithful = f.positive && f.min_gram_eigenvalue > tol;
  return f;
}

DualBasisPair dual_basis(const CStarAlgebra& a, const Functional& phi, double tol) {
  const Index d = a.dim();
  Mat pairing(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) pairing(i, j) = phi.value(a.mult().col(i * d + j));
  Eigen::FullPivLU<Mat> lu(pairing);
  lu.setThreshold(tol);
  if (!lu.isInvertible()) {
    double smin = smallest_singular_value(pairing);
    std::string note = "pairing matrix phi(x_i x_j) numerically singular";
    if (phi.faithful) note += " although phi certified faithful: tolerance conflict";
    throw ValidationError("SingularPairing", note, smin);
  }
  DualBasisPair out;
  out.dual = lu.inverse();
  double res = 0.0;
  for (Index j = 0; j < d; ++j) {
    Vec col = pairing * out.dual.col(j);
    col(j) -= 1.0;
    res = std::max(res, col.norm());
  }
  out.pairing_residual = res;
  return out;
}

namespace {

// m* = (G^-1 (x) G^-1) m^dag G, computed columnwise through reshapes.
Mat product_adjoint(const CStarAlgebra& a, const Mat& g) {
  const Index d = a.dim();
  Mat ginv = g.inverse();
  Mat mdg = a.mult().adjoint() * g;  // d^2 x d
  Mat out(d * d, d);
  for (Index k = 0; k < d; ++k) {
    Mat w = as_matrix(mdg.col(k), d, d);
    out.col(k) = as_vector(ginv * w * ginv.transpose());
  }
  return out;
}

}  // namespace

FrobeniusReport frobenius_report(const CStarAlgebra& a, const Functional& phi,
                                 const Options& opt) {
  if (!phi.faithful)
    throw ValidationError("NotFaithful", "frobenius_report requires a faithful functional",
                          phi.min_gram_eigenvalue);
  const Index d = a.dim();
  Mat g = gram_matrix(a, phi.coeffs);
  FrobeniusReport rep;
  rep.coproduct = product_adjoint(a, g);
  const Mat& mstar = rep.coproduct;
  const Mat& m = a.mult();

  // Three-term identity (m (x) id)(id (x) m*) = m* m = (id (x) m)(m* (x) id),
  // evaluated columnwise: for input x_i (x) x_j,
  //   (m (x) id)(x_i (x) m*(x_j)) = vec(L_i W_j),   W_j = reshape m*(x_j),
  //   (id (x) m)(m*(x_i) (x) x_j) = vec(W_i R_j^T).
  std::vector<Mat> w(d);
  for (Index k = 0; k < d; ++k) w[k] = as_matrix(mstar.col(k), d, d);
  auto column_residual = [&](Index i, Index j) {
    Vec mid = mstar * m.col(i * d + j);
    double r1 = (as_vector(a.left_mult_basis(i) * w[j]) - mid).norm();
    double r2 = (as_vector(w[i] * a.right_mult_basis(j).transpose()) - mid).norm();
    return std::max(r1, r2);
  };
  double res = 0.0;
  if (d <= 40) {
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) res = std::max(res, column_residual(i, j));
  } else {
    rep.sampled = true;
    Rng rng(opt.seed + 101);
    for (int s = 0; s < 128; ++s)
      res = std::max(res, column_residual(rng.uniform_index(d), rng.uniform_index(d)));
  }
  rep.frobenius_residual = res;

  Mat mmstar = m * mstar;
  Cplx lam = mmstar.trace() / static_cast<double>(d);
  rep.q_residual = (mmstar - lam * Mat::Identity(d, d)).norm();
  if (rep.q_residual < opt.tol * std::max(1.0, std::abs(lam)) &&
      std::abs(lam.imag()) < opt.tol * std::max(1.0, std::abs(lam)))
    rep.q_scalar = lam.real();

  rep.coproduct_unit = mstar * a.unit();
  DualBasisPair db = dual_basis(a, phi, opt.tol);
  Vec viaduals = Vec::Zero(d * d);
  for (Index i = 0; i < d; ++i)
    viaduals += as_vector(db.dual.col(i) * Vec::Unit(d, i).transpose());
  rep.coproduct_crosscheck = (rep.coproduct_unit - viaduals).norm();
  return rep;
}

CStarAlgebra tensor_product(const CStarAlgebra& a, const CStarAlgebra& b,
                            const Options& opt) {
  const Index da = a.dim(), db = b.dim(), d = da * db;
  Mat mult = Mat::Zero(d, d * d);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j) {
      Vec ca = a.mult().col(i * da + j);
      for (Index p = 0; p < db; ++p)
        for (Index q = 0; q < db; ++q) {
          Vec cb = b.mult().col(p * db + q);
          Index col = (i * db + p) * d + (j * db + q);
          // kron(ca, cb)
          for (Index r = 0; r < da; ++r) {
            if (ca(r) == 0.0) continue;
            mult.col(col).segment(r * db, db) += ca(r) * cb;
          }
        }
    }
  Mat star = kron(a.star_matrix(), b.star_matrix());
  Vec unit = kron(a.unit(), b.unit());
  std::vector<std::string> labels;
  if (!a.labels().empty() && !b.labels().empty()) {
    labels.reserve(d);
    for (Index i = 0; i < da; ++i)
      for (Index p = 0; p < db; ++p)
        labels.push_back(a.labels()[i] + "(x)" + b.labels()[p]);
  }
  return CStarAlgebra::from_structure_constants(std::move(mult), std::move(star),
                                                std::move(unit), std::move(labels), opt);
}

CStarAlgebra opposite_algebra(const CStarAlgebra& a, const Options& opt) {
  const Index d = a.dim();
  Mat mult(d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) mult.col(i * d + j) = a.mult().col(j * d + i);
  return CStarAlgebra::from_structure_constants(std::move(mult), a.star_matrix(), a.unit(),
                                                a.labels(), opt);
}

CStarAlgebra multimatrix_algebra(const std::vector<Index>& blocks, const Options& opt) {
  Index d = 0;
  for (Index n : blocks) d += n * n;
  Mat mult = Mat::Zero(d, d * d);
  Mat star = Mat::Zero(d, d);
  Vec unit = Vec::Zero(d);
  std::vector<std::string> labels(d);
  Index off = 0;
  int bidx = 0;
  for (Index n : blocks) {
    for (Index r = 0; r < n; ++r)
      for (Index s = 0; s < n; ++s) {
        Index i = off + r * n + s;
        labels[i] = "e" + std::to_string(bidx) + "_" + std::to_string(r) + std::to_string(s);
        star(off + s * n + r, i) = 1.0;
        if (r == s) unit(i) = 1.0;
        for (Index t = 0; t < n; ++t) {
          Index j = off + s * n + t;   // e_rs e_st = e_rt
          mult(off + r * n + t, i * d + j) = 1.0;
        }
      }
    off += n * n;
    ++bidx;
  }
  return CStarAlgebra::from_structure_constants(std::move(mult), std::move(star),
                                                std::move(unit), std::move(labels), opt);
}

Subalgebra subalgebra_from_span(const CStarAlgebra& a, const Mat& span, const Options& opt) {
  Mat v = column_space(span, opt.tol);
  const Index k = v.cols(), d = a.dim();
  if (k == 0) throw ValidationError("EmptySubalgebra", "span has rank 0", 0.0);
  Mat proj = v * v.adjoint();
  double closure = 0.0;

  Mat mult(k, k * k);
  for (Index i = 0; i < k; ++i) {
    Mat li = a.left_mult(v.col(i));
    for (Index j = 0; j < k; ++j) {
      Vec p = li * v.col(j);
      closure = std::max(closure, (p - proj * p).norm());
      mult.col(i * k + j) = v.adjoint() * p;
    }
  }
  // star_B on B-coordinates: V star_B conj(w) = star_A(conj(V w)) gives
  // star_B = V^dag star_A conj(V).
  Mat star_b = v.adjoint() * a.star_matrix() * v.conjugate();
  for (Index i = 0; i < k; ++i) {
    Vec s = a.star(v.col(i));
    closure = std::max(closure, (s - proj * s).norm());
  }
  Vec unit_b = v.adjoint() * a.unit();
  closure = std::max(closure, (a.unit() - proj * a.unit()).norm());
  if (closure >= opt.tol * std::max(1.0, a.unit().norm()))
    throw ValidationError("NotASubalgebra", "span not closed under product/star/unit", closure);

  return Subalgebra{CStarAlgebra::from_structure_constants(std::move(mult), std::move(star_b),
                                                           std::move(unit_b), {}, opt),
                    v, closure};
}

double module_unitarity_residual(const CStarAlgebra& a, const Functional& phi,
                                 const std::vector<Mat>& pi) {
  const Index d = a.dim();
  const Index dx = pi.empty() ? 0 : pi[0].rows();
  Mat mx(dx, d * dx);
  for (Index i = 0; i < d; ++i) mx.block(0, i * dx, dx, dx) = pi[i];
  Mat g = gram_matrix(a, phi.coeffs);
  Mat gd = kron(g, Mat::Identity(dx, dx));
  Mat mxstar = gd.inverse() * mx.adjoint();                 // X -> A (x) X
  RowVec vm = phi.coeffs * a.mult();                        // v* m : A (x) A -> C
  Mat lhs = kron(vm, Mat::Identity(dx, dx)) * kron(Mat::Identity(d, d), mxstar);
  return (lhs - mx).norm();
}

Vec tensor_algebra_multiply(const CStarAlgebra& a, const CStarAlgebra& b, const Vec& u,
                            const Vec& v) {
  const Index da = a.dim(), db = b.dim();
  Mat um = as_matrix(u, da, db);
  Mat vm = as_matrix(v, da, db);
  Mat out = Mat::Zero(da, db);
  for (Index i = 0; i < da; ++i) {
    if (um.row(i).norm() == 0.0) continue;
    Mat lb = b.left_mult(um.row(i).transpose());
    for (Index j = 0; j < da; ++j) {
      if (vm.row(j).norm() == 0.0) continue;
      Vec prod_a = a.mult().col(i * da + j);
      if (prod_a.isZero(0.0)) continue;
      Vec pb = lb * vm.row(j).transpose();
      out += prod_a * pb.transpose();
    }
  }
  return as_vector(out);
}

double kms_residual(const CStarAlgebra& a, const RowVec& phi, const Mat& beta) {
  const Index d = a.dim();
  double res = 0.0;
  for (Index i = 0; i < d; ++i) {
    Vec bi = beta.col(i);  // beta(x_i)
    for (Index j = 0; j < d; ++j) {
      Cplx lhs = (phi * a.mult().col(i * d + j))(0);
      Cplx rhs = (phi * (a.left_mult_basis(j) * bi))(0);
      res = std::max(res, std::abs(lhs - rhs));
    }
  }
  return res;
}

}  // namespace qgalois
