#include "qgalois/algebra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qgalois {

// Numerical Wedderburn decomposition.
//
// The GNS inner product of the regular trace tau(a) = Tr(L_a) turns the left
// regular representation into a *-representation. The center is the kernel of
// the commutator maps L_i - R_i; a random Hermitian central element is jointly
// diagonalized to find the minimal central projections, and each simple block
// is mapped onto Mat_n through its action on a column A_k p for a minimal
// projection p. Eigenvalue clusters are accepted only when separated by the
// gap threshold; otherwise a fresh random element is drawn.

namespace {

constexpr double kGapThreshold = 1e-6;
constexpr int kMaxRetries = 12;

std::vector<std::vector<Index>> cluster_eigenvalues(const Eigen::VectorXd& ev) {
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<std::vector<Index>> clusters;
  for (Index i = 0; i < ev.size(); ++i) {
    if (i == 0 || ev(i) - ev(i - 1) > kGapThreshold * scale) clusters.emplace_back();
    clusters.back().push_back(i);
  }
  return clusters;
}

bool well_separated(const Eigen::VectorXd& ev, const std::vector<std::vector<Index>>& cl) {
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (const auto& c : cl) {
    double lo = ev(c.front()), hi = ev(c.back());
    if (hi - lo > 0.1 * kGapThreshold * scale) return false;
  }
  return true;
}

struct BlockData {
  Index n = 0;
  Vec idempotent;   // minimal central projection e_k
  Mat column;       // GNS-orthonormal basis of A_k p (original coordinates via T^-1)
};

}  // namespace

WedderburnForm wedderburn_decompose_impl(const Mat& mult, const Mat& star, const Vec& unit,
                                         const std::vector<Mat>& lmats,
                                         const std::vector<Mat>& rmats, const Options& opt) {
  const Index d = unit.size();
  (void)mult;

  // GNS Gram of the regular trace; degenerate <=> not semisimple C*.
  Mat lstar(d, d);
  std::vector<Mat> lstar_mats(d);
  for (Index i = 0; i < d; ++i) {
    Mat m = Mat::Zero(d, d);
    for (Index k = 0; k < d; ++k)
      if (star(k, i) != 0.0) m += star(k, i) * lmats[k];
    lstar_mats[i] = std::move(m);
  }
  Mat gram(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      gram(i, j) = lstar_mats[i].transpose().cwiseProduct(lmats[j]).sum();
  Eigen::SelfAdjointEigenSolver<Mat> ges(0.5 * (gram + gram.adjoint()));
  double gmin = ges.eigenvalues().minCoeff();
  double gmax = ges.eigenvalues().maxCoeff();
  if (!(gmin > opt.tol * std::max(1.0, gmax)))
    throw ValidationError("NotSemisimple", "regular trace form tau(x* y) degenerate", gmin);

  Mat t = hermitian_sqrt(gram);        // to GNS-orthonormal coordinates
  Mat tinv = hermitian_inv_sqrt(gram);
  auto gns = [&](const Mat& op) { return Mat(t * op * tinv); };
  std::vector<Mat> gns_l(d);
  for (Index i = 0; i < d; ++i) gns_l[i] = gns(lmats[i]);

  // Center: kernel of all commutator maps.
  Mat comm(d * d, d);
  for (Index i = 0; i < d; ++i) comm.middleRows(i * d, d) = lmats[i] - rmats[i];
  KernelResult center = kernel(comm, opt.tol);
  const Index zdim = center.basis.cols();
  if (zdim == 0) throw ValidationError("NotSemisimple", "center is trivial (no unit?)", 0.0);

  // Hermitian spanning set of the center; real combinations stay hermitian,
  // so no orthonormalization (which could rotate phases) is applied.
  Mat herm(d, 2 * zdim);
  for (Index c = 0; c < zdim; ++c) {
    Vec z = center.basis.col(c);
    Vec zs = star * z.conjugate();
    herm.col(2 * c) = z + zs;
    herm.col(2 * c + 1) = Cplx(0, 1) * (z - zs);
  }

  Rng rng(opt.seed);
  std::vector<BlockData> blocks;
  bool ok = false;
  for (int attempt = 0; attempt < kMaxRetries && !ok; ++attempt) {
    blocks.clear();
    Vec c = Vec::Zero(d);
    for (Index i = 0; i < herm.cols(); ++i) c += rng.real() * herm.col(i);
    Mat lc = Mat::Zero(d, d);
    for (Index i = 0; i < d; ++i)
      if (c(i) != 0.0) lc += c(i) * lmats[i];
    Mat lc_gns = gns(lc);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (lc_gns + lc_gns.adjoint()));
    auto clusters = cluster_eigenvalues(es.eigenvalues());
    if (static_cast<Index>(clusters.size()) != zdim ||
        !well_separated(es.eigenvalues(), clusters))
      continue;

    ok = true;
    for (const auto& cl : clusters) {
      BlockData bd;
      Index msize = static_cast<Index>(cl.size());
      Index n = static_cast<Index>(std::llround(std::sqrt(double(msize))));
      if (n * n != msize) {
        ok = false;
        break;
      }
      bd.n = n;
      Mat y(d, msize);   // GNS-orthonormal basis of the isotypic block A_k
      for (Index q = 0; q < msize; ++q) y.col(q) = es.eigenvectors().col(cl[q]);
      bd.idempotent = tinv * (y * (y.adjoint() * (t * unit)));

      // Minimal projection from a random Hermitian element of the block.
      bool found = false;
      for (int btry = 0; btry < kMaxRetries && !found; ++btry) {
        Vec h = tinv * (y * rng.vec(msize));
        h = 0.5 * (h + star * h.conjugate());
        Mat lh = Mat::Zero(d, d);
        for (Index i = 0; i < d; ++i)
          if (h(i) != 0.0) lh += h(i) * lmats[i];
        Mat lh_block = y.adjoint() * gns(lh) * y;
        Eigen::SelfAdjointEigenSolver<Mat> hs(0.5 * (lh_block + lh_block.adjoint()));
        auto hcl = cluster_eigenvalues(hs.eigenvalues());
        if (static_cast<Index>(hcl.size()) != n || !well_separated(hs.eigenvalues(), hcl))
          continue;
        bool sizes_ok = std::all_of(hcl.begin(), hcl.end(), [&](const auto& cc) {
          return static_cast<Index>(cc.size()) == n;
        });
        if (!sizes_ok) continue;
        Mat v0(msize, n);
        for (Index q = 0; q < n; ++q) v0.col(q) = hs.eigenvectors().col(hcl[0][q]);
        Vec p = tinv * (y * (v0 * (v0.adjoint() * (y.adjoint() * (t * bd.idempotent)))));
        // A_k p: columns x_q p for the block basis.
        Mat rp = Mat::Zero(d, d);
        for (Index i = 0; i < d; ++i)
          if (p(i) != 0.0) rp += p(i) * rmats[i];
        Mat col = rp * (tinv * y);
        Mat colspace = column_space(t * col, opt.tol);  // GNS-orthonormal
        if (colspace.cols() != n) continue;
        bd.column = colspace;
        found = true;
      }
      if (!found) {
        ok = false;
        break;
      }
      blocks.push_back(std::move(bd));
    }
  }
  if (!ok)
    throw ValidationError("NotSemisimple",
                          "central eigenvalue clustering failed repeatedly", 0.0);

  // Deterministic block order: dimension, then the idempotent fingerprint.
  std::sort(blocks.begin(), blocks.end(), [](const BlockData& a, const BlockData& b) {
    if (a.n != b.n) return a.n < b.n;
    for (Index i = 0; i < a.idempotent.size(); ++i) {
      auto ra = std::llround(a.idempotent(i).real() * 1e6);
      auto rb = std::llround(b.idempotent(i).real() * 1e6);
      if (ra != rb) return ra < rb;
      auto ia = std::llround(a.idempotent(i).imag() * 1e6);
      auto ib = std::llround(b.idempotent(i).imag() * 1e6);
      if (ia != ib) return ia < ib;
    }
    return false;
  });

  WedderburnForm w;
  w.seed = opt.seed;
  Index off = 0;
  w.iso = Mat::Zero(d, d);
  for (const auto& bd : blocks) {
    w.blocks.push_back(bd.n);
    // pi_k(a) = Q^dag (T L_a T^-1) Q with GNS-orthonormal Q.
    for (Index m = 0; m < d; ++m) {
      Mat pm = bd.column.adjoint() * gns_l[m] * bd.column;
      for (Index r = 0; r < bd.n; ++r)
        for (Index s = 0; s < bd.n; ++s) w.iso(off + r * bd.n + s, m) = pm(r, s);
    }
    off += bd.n * bd.n;
  }
  if (off != d)
    throw ValidationError("NotSemisimple", "sum of squared block sizes != dim", double(off));

  double smin = smallest_singular_value(w.iso);
  if (smin < opt.tol)
    throw ValidationError("NotSemisimple", "multimatrix map not invertible", smin);
  w.iso_inv = w.iso.inverse();

  // Certify against the model algebra (+)_k Mat_{n_k}, evaluated blockwise to
  // avoid materializing its structure constants.
  auto model_product = [&](const Vec& x, const Vec& y) {
    Vec out = Vec::Zero(d);
    Index o = 0;
    for (Index n : w.blocks) {
      Mat xm = as_matrix(x.segment(o, n * n), n, n);
      Mat ym = as_matrix(y.segment(o, n * n), n, n);
      out.segment(o, n * n) = as_vector(xm * ym);
      o += n * n;
    }
    return out;
  };
  auto model_star = [&](const Vec& x) {
    Vec out = Vec::Zero(d);
    Index o = 0;
    for (Index n : w.blocks) {
      Mat xm = as_matrix(x.segment(o, n * n), n, n);
      out.segment(o, n * n) = as_vector(Mat(xm.adjoint()));
      o += n * n;
    }
    return out;
  };
  Vec model_unit = Vec::Zero(d);
  {
    Index o = 0;
    for (Index n : w.blocks) {
      for (Index r = 0; r < n; ++r) model_unit(o + r * n + r) = 1.0;
      o += n * n;
    }
  }

  double res = (w.iso * unit - model_unit).norm();
  for (Index i = 0; i < d; ++i) {
    Vec si = w.iso * star.col(i);
    Vec sm = model_star(w.iso.col(i));
    res = std::max(res, (si - sm).norm());
  }
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      Vec lhs = w.iso * lmats[i].col(j);
      Vec rhs = model_product(w.iso.col(i), w.iso.col(j));
      res = std::max(res, (lhs - rhs).norm());
    }
  w.residual = res;
  if (res >= std::max(opt.tol, 1e-7))
    throw ValidationError("NotSemisimple", "multimatrix map is not a *-isomorphism", res);
  return w;
}

}  // namespace qgalois
