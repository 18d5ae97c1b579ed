#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qgalois/algebra.hpp"

#include <cmath>

using namespace qgalois;

namespace {

CStarAlgebra scalars() { return multimatrix_algebra({1}); }

/// Function algebra on Z/2 with pointwise product on the idempotent basis.
CStarAlgebra function_algebra_z2() {
  Mat mult = Mat::Zero(2, 4);
  mult(0, 0) = 1.0;  // d_e d_e = d_e
  mult(1, 3) = 1.0;  // d_g d_g = d_g
  Mat star = Mat::Identity(2, 2);
  Vec unit(2);
  unit << 1.0, 1.0;
  return CStarAlgebra::from_structure_constants(mult, star, unit, {"d_e", "d_g"});
}

/// Group algebra C[S3]; the permutation composition table is the oracle.
CStarAlgebra group_algebra_s3() {
  // permutations of {0,1,2} in one-line notation
  int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  auto compose = [&](int a, int b) {
    int c[3];
    for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
    for (int k = 0; k < 6; ++k)
      if (c[0] == perms[k][0] && c[1] == perms[k][1] && c[2] == perms[k][2]) return k;
    return -1;
  };
  Mat mult = Mat::Zero(6, 36);
  Mat star = Mat::Zero(6, 6);
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) mult(compose(a, b), a * 6 + b) = 1.0;
    for (int b = 0; b < 6; ++b)
      if (compose(a, b) == 0) star(b, a) = 1.0;  // u_a* = u_{a^-1}
  }
  Vec unit = Vec::Unit(6, 0);
  return CStarAlgebra::from_structure_constants(mult, star, unit);
}

RowVec normalized_trace(const CStarAlgebra& a) {
  RowVec t = a.regular_trace();
  // regular trace of Mat_n is n Tr; normalize by value at the unit
  Cplx at_unit = (t * a.unit())(0);
  return t / at_unit;
}

}  // namespace

TEST_CASE("one-dimensional algebra validates with a single block") {
  auto a = scalars();
  CHECK(a.dim() == 1);
  REQUIRE(a.wedderburn().blocks.size() == 1);
  CHECK(a.wedderburn().blocks[0] == 1);
}

TEST_CASE("Mat_2 from matrix units validates, blocks [2]") {
  auto a = multimatrix_algebra({2});
  CHECK(a.dim() == 4);
  REQUIRE(a.wedderburn().blocks.size() == 1);
  CHECK(a.wedderburn().blocks[0] == 2);
  CHECK(a.wedderburn().residual < 1e-9);
}

TEST_CASE("function algebra on Z/2 has blocks [1,1]") {
  auto a = function_algebra_z2();
  CHECK(a.wedderburn().blocks == std::vector<Index>{1, 1});
}

TEST_CASE("group algebra of S3 decomposes as [1,1,2]") {
  auto a = group_algebra_s3();
  CHECK(a.wedderburn().blocks == std::vector<Index>{1, 1, 2});
  CHECK(a.wedderburn().residual < 1e-8);
}

TEST_CASE("Mat_3 decomposes as [3] with invertible basis change") {
  auto a = multimatrix_algebra({3});
  CHECK(a.wedderburn().blocks == std::vector<Index>{3});
  CHECK(smallest_singular_value(a.wedderburn().iso) > 1e-6);
}

TEST_CASE("wedderburn recovers multimatrix constructor block sizes") {
  for (auto blocks : {std::vector<Index>{1, 2}, {2, 2}, {1, 1, 3}, {4}}) {
    auto a = multimatrix_algebra(blocks);
    CHECK(a.wedderburn().blocks == blocks);
  }
}

TEST_CASE("validation errors name the violated identity") {
  SUBCASE("broken associativity") {
    // Mat_2 with e01 e10 perturbed to e00 + 0.3 e11:
    // (e01 e10) e11 = 0.3 e11 while e01 (e10 e11) = 0.
    auto m2 = multimatrix_algebra({2});
    Mat mult = m2.mult();
    mult(3, 1 * 4 + 2) += 0.3;
    CHECK_THROWS_WITH_AS(
        CStarAlgebra::from_structure_constants(mult, m2.star_matrix(), m2.unit()),
        doctest::Contains("NotAssociative"), ValidationError);
  }
  SUBCASE("missing unit") {
    Mat mult = Mat::Zero(1, 1);  // x*x = 0
    Vec unit(1);
    unit << 1.0;
    CHECK_THROWS_AS(CStarAlgebra::from_structure_constants(mult, Mat::Identity(1, 1), unit),
                    ValidationError);
  }
  SUBCASE("non-semisimple star") {
    // C[x]/(x^2) with x* = x: associative unital but the trace form is degenerate
    Mat mult = Mat::Zero(2, 4);
    mult(0, 0) = 1.0;  // 1*1
    mult(1, 1) = 1.0;  // 1*x
    mult(1, 2) = 1.0;  // x*1
    Vec unit(2);
    unit << 1.0, 0.0;
    CHECK_THROWS_WITH_AS(
        CStarAlgebra::from_structure_constants(mult, Mat::Identity(2, 2), unit),
        doctest::Contains("NotSemisimple"), ValidationError);
  }
}

TEST_CASE("check_functional flags") {
  auto m2 = multimatrix_algebra({2});
  SUBCASE("normalized trace is positive and faithful") {
    auto f = check_functional(m2, normalized_trace(m2), 1e-9);
    CHECK(f.hermitian);
    CHECK(f.positive);
    CHECK(f.faithful);
  }
  SUBCASE("corner state a -> a_11 is positive, not faithful") {
    RowVec phi = RowVec::Zero(4);
    phi(0) = 1.0;  // e_00 coefficient
    auto f = check_functional(m2, phi, 1e-9);
    CHECK(f.positive);
    CHECK_FALSE(f.faithful);
  }
  SUBCASE("signed weights on C^2 are not positive") {
    auto c2 = multimatrix_algebra({1, 1});
    RowVec phi(2);
    phi << 1.0, -1.0;
    auto f = check_functional(c2, phi, 1e-9);
    CHECK_FALSE(f.positive);
  }
}

TEST_CASE("dual bases") {
  SUBCASE("scalars: x^1 = 1") {
    auto a = scalars();
    RowVec phi(1);
    phi << 1.0;
    auto db = dual_basis(a, check_functional(a, phi, 1e-9), 1e-9);
    CHECK(std::abs(db.dual(0, 0) - 1.0) < 1e-12);
  }
  SUBCASE("Mat_2 with normalized trace: dual of e_ij is 2 e_ji") {
    auto a = multimatrix_algebra({2});
    auto phi = check_functional(a, normalized_trace(a), 1e-9);
    auto db = dual_basis(a, phi, 1e-9);
    CHECK(db.pairing_residual < 1e-12);
    // basis order e00,e01,e10,e11: dual of e01 (index 1) must be 2*e10 (index 2)
    Vec expected = Vec::Zero(4);
    expected(2) = 2.0;
    CHECK((db.dual.col(1) - expected).norm() < 1e-12);
    Vec expected00 = Vec::Zero(4);
    expected00(0) = 2.0;
    CHECK((db.dual.col(0) - expected00).norm() < 1e-12);
  }
  SUBCASE("C(Z/2) with Haar weights (1/2,1/2): dual of d_e is 2 d_e") {
    auto a = function_algebra_z2();
    RowVec phi(2);
    phi << 0.5, 0.5;
    auto db = dual_basis(a, check_functional(a, phi, 1e-9), 1e-9);
    Vec expected = Vec::Zero(2);
    expected(0) = 2.0;
    CHECK((db.dual.col(0) - expected).norm() < 1e-12);
  }
  SUBCASE("singular pairing is reported") {
    auto a = function_algebra_z2();
    RowVec phi(2);
    phi << 1.0, 0.0;
    Functional f;
    f.coeffs = phi;
    f.faithful = false;
    CHECK_THROWS_WITH_AS(dual_basis(a, f, 1e-9), doctest::Contains("SingularPairing"),
                         ValidationError);
  }
}

TEST_CASE("frobenius report") {
  SUBCASE("Mat_n with normalized trace: residual 0, lambda = n^2") {
    for (Index n : {2, 3}) {
      auto a = multimatrix_algebra({n});
      auto phi = check_functional(a, normalized_trace(a), 1e-9);
      auto rep = frobenius_report(a, phi);
      CHECK(rep.frobenius_residual < 1e-9);
      REQUIRE(rep.q_scalar.has_value());
      CHECK(std::abs(*rep.q_scalar - double(n * n)) < 1e-9);
      CHECK(rep.coproduct_crosscheck < 1e-9);
    }
  }
  SUBCASE("C^2 with (1/2,1/2): lambda = 2") {
    auto a = multimatrix_algebra({1, 1});
    RowVec w(2);
    w << 0.5, 0.5;
    auto rep = frobenius_report(a, check_functional(a, w, 1e-9));
    REQUIRE(rep.q_scalar.has_value());
    CHECK(std::abs(*rep.q_scalar - 2.0) < 1e-9);
  }
  SUBCASE("non-uniform weights on C^2: Frobenius holds but m m* is not scalar") {
    // On a non-simple algebra the blockwise scalars differ (here 3 and 3/2),
    // so q_scalar must be absent while the Frobenius identity still holds.
    auto a = multimatrix_algebra({1, 1});
    RowVec w(2);
    w << 1.0 / 3.0, 2.0 / 3.0;
    auto rep = frobenius_report(a, check_functional(a, w, 1e-9));
    CHECK(rep.frobenius_residual < 1e-9);
    CHECK_FALSE(rep.q_scalar.has_value());
  }
  SUBCASE("Mat_2 with a faithful non-tracial state stays Frobenius") {
    // m m* remains scalar on a simple block (it is a bimodule endomorphism),
    // with lambda = Tr(c) Tr(c^-1) for the density matrix c; brute numbers below.
    auto a = multimatrix_algebra({2});
    RowVec phi(4);  // phi(x) = Tr(x c) with c = diag(2,1)/3
    phi << 2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0;
    auto rep = frobenius_report(a, check_functional(a, phi, 1e-9));
    CHECK(rep.frobenius_residual < 1e-9);
    REQUIRE(rep.q_scalar.has_value());
    double expected = 3.0 * 4.5 / 3.0;  // Tr(c) Tr(c^{-1}) = 1 * 4.5 with c = diag(2/3,1/3)
    CHECK(std::abs(*rep.q_scalar - expected) < 1e-9);
    CHECK(std::abs(*rep.q_scalar - 4.0) > 0.1);  // differs from dim_q = 4
  }
}

TEST_CASE("frobenius residual vanishes for random faithful positive functionals") {
  Rng rng(7);
  for (auto blocks : {std::vector<Index>{2}, {1, 2}, {1, 1, 2}}) {
    auto a = multimatrix_algebra(blocks);
    // random faithful positive functional: x -> sum_k Tr(W_k(x) c_k), c_k > 0
    RowVec phi = RowVec::Zero(a.dim());
    Index off = 0;
    Vec weights = Vec::Zero(a.dim());
    for (Index n : blocks) {
      Mat c = rng.positive(n);
      for (Index r = 0; r < n; ++r)
        for (Index s = 0; s < n; ++s) weights(off + r * n + s) = c(s, r);
      off += n * n;
    }
    for (Index m = 0; m < a.dim(); ++m)
      phi(m) = (weights.transpose() * a.wedderburn().iso.col(m))(0);
    auto f = check_functional(a, phi, 1e-9);
    REQUIRE(f.faithful);
    auto rep = frobenius_report(a, f);
    CHECK(rep.frobenius_residual < 1e-8);
    CHECK(rep.coproduct_crosscheck < 1e-8);
  }
}

TEST_CASE("module unitarity residual detects non-star-preserving modules") {
  auto a = multimatrix_algebra({2});
  auto phi = check_functional(a, normalized_trace(a), 1e-9);
  // defining representation: pi(e_rs) = E_rs
  std::vector<Mat> pi(4, Mat::Zero(2, 2));
  pi[0](0, 0) = 1.0;
  pi[1](0, 1) = 1.0;
  pi[2](1, 0) = 1.0;
  pi[3](1, 1) = 1.0;
  CHECK(module_unitarity_residual(a, phi, pi) < 1e-10);

  // conjugate by a non-unitary invertible g: still a module, not star-preserving
  Mat g(2, 2);
  g << 1.0, 0.7, 0.0, 1.0;
  Mat gi = g.inverse();
  std::vector<Mat> bad(4);
  for (int i = 0; i < 4; ++i) bad[i] = g * pi[i] * gi;
  CHECK(module_unitarity_residual(a, phi, bad) > 1e-3);

  // unitary conjugation preserves unitarity
  Mat u(2, 2);
  u << Cplx(0, 1) / std::sqrt(2.0), Cplx(1, 0) / std::sqrt(2.0),
      Cplx(-1, 0) / std::sqrt(2.0), Cplx(0, -1) / std::sqrt(2.0);
  std::vector<Mat> rot(4);
  for (int i = 0; i < 4; ++i) rot[i] = u * pi[i] * u.adjoint();
  CHECK(module_unitarity_residual(a, phi, rot) < 1e-10);
}

TEST_CASE("tensor products and opposites") {
  SUBCASE("C (x) A recovers A's blocks") {
    auto a = multimatrix_algebra({2});
    auto t = tensor_product(scalars(), a);
    CHECK(t.dim() == 4);
    CHECK(t.wedderburn().blocks == std::vector<Index>{2});
  }
  SUBCASE("Mat_2 (x) Mat_2 = Mat_4") {
    auto a = multimatrix_algebra({2});
    auto t = tensor_product(a, a);
    CHECK(t.wedderburn().blocks == std::vector<Index>{4});
  }
  SUBCASE("opposite of Mat_2 is Mat_2 via transpose") {
    auto a = multimatrix_algebra({2});
    auto op = opposite_algebra(a);
    CHECK(op.wedderburn().blocks == std::vector<Index>{2});
    // transpose map T(e_rs) = e_sr is a unital *-iso Mat_2 -> Mat_2^op
    Mat t = Mat::Zero(4, 4);
    t(0, 0) = t(3, 3) = 1.0;
    t(1, 2) = t(2, 1) = 1.0;
    double res = 0.0;
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 4; ++j) {
        Vec lhs = t * a.mult().col(i * 4 + j);
        Vec rhs = op.multiply(t.col(i), t.col(j));
        res = std::max(res, (lhs - rhs).norm());
      }
    CHECK(res < 1e-12);
  }
}

TEST_CASE("subalgebra extraction") {
  auto a = multimatrix_algebra({2});
  // diagonal subalgebra span{e00, e11} = C^2
  Mat span = Mat::Zero(4, 2);
  span(0, 0) = 1.0;
  span(3, 1) = 1.0;
  auto sub = subalgebra_from_span(a, span);
  CHECK(sub.algebra.dim() == 2);
  CHECK(sub.algebra.wedderburn().blocks == std::vector<Index>{1, 1});
  CHECK(sub.closure_residual < 1e-12);

  // span{e01} is not a unital subalgebra
  Mat bad = Mat::Zero(4, 1);
  bad(1, 0) = 1.0;
  CHECK_THROWS_AS(subalgebra_from_span(a, bad), ValidationError);
}

TEST_CASE("kms residual for Ad c against Tr(.c)Tr(c^-1)") {
  auto a = multimatrix_algebra({2});
  Mat c = Mat::Zero(2, 2);
  c(0, 0) = 2.0;
  c(1, 1) = 1.0;
  Mat cinv = c.inverse();
  // phi(e_rs) = Tr(E_rs c) Tr(c^-1) = c_sr * 1.5
  RowVec phi(4);
  phi << c(0, 0) * 1.5, c(1, 0) * 1.5, c(0, 1) * 1.5, c(1, 1) * 1.5;
  // beta = Ad c on coefficients
  Mat beta(4, 4);
  for (Index r = 0; r < 2; ++r)
    for (Index s = 0; s < 2; ++s) {
      Mat e = Mat::Zero(2, 2);
      e(r, s) = 1.0;
      Mat im = c * e * cinv;
      Index col = r * 2 + s;
      beta(0, col) = im(0, 0);
      beta(1, col) = im(0, 1);
      beta(2, col) = im(1, 0);
      beta(3, col) = im(1, 1);
    }
  CHECK(kms_residual(a, phi, beta) < 1e-12);
  CHECK(kms_residual(a, phi, Mat::Identity(4, 4)) > 1e-3);  // phi is not a trace

  // and m m* = id for this normalization
  auto f = check_functional(a, phi, 1e-9);
  auto rep = frobenius_report(a, f);
  REQUIRE(rep.q_scalar.has_value());
  CHECK(std::abs(*rep.q_scalar - 1.0) < 1e-10);
}
