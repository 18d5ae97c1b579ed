#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qgalois/hopf.hpp"

#include <cmath>

using namespace qgalois;

TEST_CASE("group table validation") {
  CHECK(GroupTable::cyclic(4).identity == 0);
  CHECK(GroupTable::symmetric3().order == 6);
  auto z2xz2 = GroupTable::direct_product(GroupTable::cyclic(2), GroupTable::cyclic(2));
  CHECK(z2xz2.order == 4);
  for (int g = 0; g < 4; ++g) CHECK(z2xz2.inverse[g] == g);

  // broken table: constant rows have no identity
  std::vector<std::vector<int>> bad(2, std::vector<int>{0, 0});
  CHECK_THROWS_WITH_AS(GroupTable::validate(bad), doctest::Contains("NotAGroup"),
                       ValidationError);
}

TEST_CASE("C(Z/2) validates with Haar (1/2,1/2)") {
  auto g = build_function_algebra(GroupTable::cyclic(2));
  CHECK(g.dim() == 2);
  CHECK(std::abs(g.haar().coeffs(0) - 0.5) < 1e-12);
  CHECK(std::abs(g.haar().coeffs(1) - 0.5) < 1e-12);
  CHECK(g.rho_trivial());
  // two characters: trivial (1,1) and sign (1,-1), in a deterministic order
  REQUIRE(g.irreps().size() == 2);
  CHECK(g.irreps()[0].dim == 1);
  CHECK(g.irreps()[1].dim == 1);
  Vec a = g.irreps()[0].coefficient(0, 0);
  Vec b = g.irreps()[1].coefficient(0, 0);
  Vec sign(2);
  sign << 1.0, -1.0;
  bool match = ((a - Vec::Ones(2)).norm() < 1e-9 && (b - sign).norm() < 1e-9) ||
               ((b - Vec::Ones(2)).norm() < 1e-9 && (a - sign).norm() < 1e-9);
  CHECK(match);
}

TEST_CASE("group algebra C[Z/2] validates; Haar is delta_e") {
  auto g = build_group_algebra(GroupTable::cyclic(2));
  CHECK(std::abs(g.haar().coeffs(0) - 1.0) < 1e-12);
  CHECK(std::abs(g.haar().coeffs(1)) < 1e-12);
}

TEST_CASE("C(S3): uniform Haar, irreps of the dual have dims 1,1,2") {
  auto g = build_function_algebra(GroupTable::symmetric3());
  for (int i = 0; i < 6; ++i) CHECK(std::abs(g.haar().coeffs(i) - 1.0 / 6.0) < 1e-12);
  REQUIRE(g.irreps().size() == 3);
  CHECK(g.irreps()[0].dim == 1);
  CHECK(g.irreps()[1].dim == 1);
  CHECK(g.irreps()[2].dim == 2);
  for (const auto& u : g.irreps()) {
    CHECK(u.unitarity_residual < 1e-9);
    CHECK(u.corep_residual < 1e-9);
  }
}

TEST_CASE("C[S3] has blocks [1,1,2]") {
  auto g = build_group_algebra(GroupTable::symmetric3());
  CHECK(g.algebra().wedderburn().blocks == std::vector<Index>{1, 1, 2});
}

TEST_CASE("broken antipode is rejected") {
  // S swapping d_e and d_g on C(Z/2) violates m(S (x) id)Delta = eps(.)1
  auto z2 = GroupTable::cyclic(2);
  auto good = build_function_algebra(z2);
  Mat bad_s(2, 2);
  bad_s << 0.0, 1.0, 1.0, 0.0;
  CHECK_THROWS_WITH_AS(
      FiniteQuantumGroup::validate(good.algebra(), good.comul(), good.counit(), bad_s),
      doctest::Contains("AntipodeLawViolated"), ValidationError);
}

TEST_CASE("haar solver rejects non-Hopf comultiplications") {
  // Delta(x) = x (x) 1 on C^2 is coassociative but has a 2-dim invariant space
  auto z2 = GroupTable::cyclic(2);
  auto alg = build_function_algebra(z2).algebra();
  Mat comul = Mat::Zero(4, 2);
  // d_i -> d_i (x) (d_0 + d_1)
  comul(0 * 2 + 0, 0) = 1.0;
  comul(0 * 2 + 1, 0) = 1.0;
  comul(1 * 2 + 0, 1) = 1.0;
  comul(1 * 2 + 1, 1) = 1.0;
  CHECK_THROWS_AS(haar_state(alg, comul, 1e-9), ValidationError);
}

TEST_CASE("dual of C(Z/2) is C[Z/2] on the nose in dual bases") {
  auto g = build_function_algebra(GroupTable::cyclic(2));
  auto dual = dual_quantum_group(g);
  auto model = build_group_algebra(GroupTable::cyclic(2));
  CHECK((dual.algebra().mult() - model.algebra().mult()).norm() < 1e-12);
  CHECK((dual.comul() - model.comul()).norm() < 1e-12);
  CHECK((dual.algebra().star_matrix() - model.algebra().star_matrix()).norm() < 1e-12);
  CHECK((dual.haar().coeffs - model.haar().coeffs).norm() < 1e-12);
}

TEST_CASE("dual of C(S3) is noncommutative with blocks [1,1,2]") {
  auto g = build_function_algebra(GroupTable::symmetric3());
  auto dual = dual_quantum_group(g);
  CHECK(dual.algebra().wedderburn().blocks == std::vector<Index>{1, 1, 2});
}

TEST_CASE("double dual is canonically the original") {
  for (auto g : {build_function_algebra(GroupTable::symmetric3()),
                 build_group_algebra(GroupTable::cyclic(3))}) {
    auto r = double_dual_residuals(g);
    CHECK(r.max() < 1e-9);
  }
}

TEST_CASE("dual of C[Z/3] has three group-like irreps of dimension 1") {
  auto g = build_group_algebra(GroupTable::cyclic(3));
  auto dual = dual_quantum_group(g);
  REQUIRE(dual.irreps().size() == 3);
  for (const auto& u : dual.irreps()) CHECK(u.dim == 1);
}

TEST_CASE("haar is tracial for all builder quantum groups (Kac)") {
  for (auto g : {build_function_algebra(GroupTable::symmetric3()),
                 build_group_algebra(GroupTable::symmetric3()),
                 build_function_algebra(GroupTable::cyclic(4))}) {
    const auto& h = g.algebra();
    double r = 0.0;
    for (Index i = 0; i < h.dim(); ++i)
      for (Index j = 0; j < h.dim(); ++j)
        r = std::max(r, std::abs(g.haar().value(h.mult().col(i * h.dim() + j)) -
                                 g.haar().value(h.mult().col(j * h.dim() + i))));
    CHECK(r < 1e-10);
  }
}

TEST_CASE("conjugates and standard solutions") {
  SUBCASE("Kac case: Ubar = U^c, dim_q = dim, conjugate equations hold") {
    auto g = build_function_algebra(GroupTable::symmetric3());
    for (const auto& u : g.irreps()) {
      auto rep = conjugate_representation(g, u);
      CHECK(rep.solution.conjugate_equations_residual < 1e-10);
      CHECK(rep.solution.balancing_residual < 1e-10);
      CHECK(std::abs(rep.solution.dim_q - double(u.dim)) < 1e-10);
      CHECK(rep.conjugate.unitarity_residual < 1e-8);
      CHECK(rep.conjugate.corep_residual < 1e-8);
      CHECK(rep.invariance_residual < 1e-8);
      // Ubar has entrywise-starred coefficients when rho = 1
      double diff = 0.0;
      for (Index i = 0; i < u.dim; ++i)
        for (Index j = 0; j < u.dim; ++j)
          diff = std::max(diff, (rep.conjugate.coefficient(i, j) -
                                 g.algebra().star(u.coefficient(i, j))).norm());
      CHECK(diff < 1e-10);
    }
  }
  SUBCASE("pure linear-algebra mode: rho = diag(2, 1/2)") {
    Mat rho = Mat::Zero(2, 2);
    rho(0, 0) = 2.0;
    rho(1, 1) = 0.5;
    auto s = standard_solution(rho, 1e-9);
    CHECK(std::abs(s.r1.squaredNorm() - 2.5) < 1e-12);  // q + 1/q with q = 2
    CHECK(s.conjugate_equations_residual < 1e-12);
    CHECK(s.balancing_residual < 1e-12);
    CHECK(std::abs(s.dim_q - 2.5) < 1e-12);

    // convention: (id (x) xi*) R(1) = conj(rho^-1/2 xi)
    Rng rng(3);
    Vec xi = rng.vec(2);
    Mat r1m = as_matrix(s.r1, 2, 2);
    Vec lhs = r1m * xi.conjugate();
    Vec rhs = (hermitian_inv_sqrt(rho) * xi).conjugate();
    CHECK((lhs - rhs).norm() < 1e-12);
  }
  SUBCASE("non-positive rho is rejected") {
    Mat rho(2, 2);
    rho << 1.0, 0.0, 0.0, -1.0;
    CHECK_THROWS_WITH_AS(standard_solution(rho, 1e-9), doctest::Contains("RhoNotPositive"),
                         ValidationError);
  }
}

TEST_CASE("tensor representations multiply matrix coefficients") {
  auto g = build_function_algebra(GroupTable::cyclic(2));
  const auto& sign = g.irreps()[1];
  auto t = g.tensor_rep(sign, sign);
  CHECK(t.dim == 1);
  // sign (x) sign = trivial
  CHECK((t.coefficient(0, 0) - g.algebra().unit()).norm() < 1e-12);
}
