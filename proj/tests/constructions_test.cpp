#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "onslab/constructions.hpp"
#include "onslab/typecotype.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace onslab;

namespace {

OptBudget budgetOf(std::uint64_t seed = 1, int restarts = 10, int iters = 150) {
  OptBudget b;
  b.restarts = restarts;
  b.maxIterations = iters;
  b.policy.masterSeed = seed;
  b.policy.sampleCount = 40000;
  return b;
}

}  // namespace

TEST_CASE("factory systems validate") {
  std::vector<OrthonormalSystem> all = {
      fourierSystem(4, 16), fourierSystem(4, 4),   canonicalSystem(2, 2),
      canonicalSystem(3, 7), haarRandomSystem(4, 9, 3), l1SubspaceSystem(4, 9, 3),
  };
  for (const auto& sys : all) CHECK(gramDeviation(sys.values, sys.space) <= 1e-10);

  // fourier(2, 4): the displayed geometric sum vanishes
  auto f24 = fourierSystem(2, 4);
  Complex ip = innerProduct(f24.values.row(0).transpose(), f24.values.row(1).transpose(),
                            f24.space);
  CHECK(std::abs(ip) < 1e-14);

  // single-frequency system is a unimodular row
  auto f1 = fourierSystem(1, 5);
  for (int j = 0; j < 5; ++j) CHECK(std::abs(f1.values(0, j)) == doctest::Approx(1.0));

  CHECK(haarRandomSystem(1, 1, 12).values(0, 0).real() != 0.0);
}

TEST_CASE("factories are deterministic in the seed") {
  auto a = haarRandomSystem(5, 12, 42);
  auto b = haarRandomSystem(5, 12, 42);
  CHECK((a.values - b.values).norm() == 0.0);
  auto c = l1SubspaceSystem(5, 12, 42);
  auto d = l1SubspaceSystem(5, 12, 42);
  CHECK((c.values - d.values).norm() == 0.0);
}

TEST_CASE("bourgain subsets") {
  auto sets = bourgainSubset(4.0, 3, 5);
  REQUIRE(sets.size() == 3);
  // |S_2| = floor(4^(2/4)) = 2 inside {4,...,7}
  CHECK(sets[1].size() == 2);
  for (int f : sets[1]) {
    CHECK(f >= 4);
    CHECK(f < 8);
  }
  auto q3 = bourgainSubset(3.0, 1, 5);
  CHECK(q3[0].size() == 1);  // floor(4^(1/3)) = 1

  // dyadic blocks keep the sets disjoint
  std::vector<int> all;
  for (const auto& s : sets) all.insert(all.end(), s.begin(), s.end());
  std::sort(all.begin(), all.end());
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());

  auto viaRecipe = buildSystem(SystemRecipe{"bourgainSubset", 0, 64, 4.0, 3, 5});
  CHECK(gramDeviation(viaRecipe.values, viaRecipe.space) < 1e-10);
}

TEST_CASE("K_q constants") {
  // q = 2 is orthonormality
  auto f = fourierSystem(3, 8);
  CHECK(kqConstant(f, 2.0, budgetOf()).value == doctest::Approx(1.0).epsilon(1e-9));

  // canonical: K_q = N^(1/2 - 1/q), single-coordinate maximizer
  auto canon = canonicalSystem(2, 4);
  CHECK(kqConstant(canon, 4.0, budgetOf()).value ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));

  // single function: the L_q norm itself
  auto single = l1SubspaceSystem(1, 6, 9);
  auto rep = kqConstant(single, 3.0, budgetOf());
  CHECK(rep.value == doctest::Approx(spanLqNorm(single, Vector::Ones(1), 3.0)).epsilon(1e-9));

  // monotone in q on the shared witness
  auto k3 = kqConstant(f, 3.0, budgetOf());
  CHECK(spanLqNorm(f, k3.witness.col(0), 3.0) <=
        spanLqNorm(f, k3.witness.col(0), 6.0) * (1 + 1e-12));

  // n = 2 complex grid oracle
  double grid = oracles::gridSphere2ComplexMax(
      [&](const Vector& a) { return spanLqNorm(fourierSystem(2, 4), a, 4.0); });
  CHECK(kqConstant(fourierSystem(2, 4), 4.0, budgetOf(2, 12)).value ==
        doctest::Approx(grid).epsilon(1e-2));
}

TEST_CASE("Lambda_2 constants") {
  auto canon = canonicalSystem(3, 5);
  CHECK(lambda2Constant(canon, budgetOf()).value ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-6));

  CHECK(lambda2Constant(fourierSystem(1, 6), budgetOf()).value ==
        doctest::Approx(1.0).epsilon(1e-9));

  // always >= 1, and = 1 exactly when the minimizer has constant modulus
  auto haar = haarRandomSystem(3, 6, 8);
  auto rep = lambda2Constant(haar, budgetOf());
  CHECK(rep.value >= 1.0 - 1e-12);

  // full fourier n = N = 2 against the dense 2-parameter sphere sweep
  auto f22 = fourierSystem(2, 2);
  double grid = 1.0 / -oracles::gridSphere2ComplexMax(
                          [&](const Vector& a) { return -spanLqNorm(f22, a, 1.0); });
  CHECK(lambda2Constant(f22, budgetOf(4, 12)).value == doctest::Approx(grid).epsilon(1e-2));
}

TEST_CASE("random systems have small K_q (spot check)") {
  double q = 4.0;
  int n = 8, N = 64;
  double bound = 10.0 * std::max(std::sqrt(q), std::sqrt(double(n)) * std::pow(N, -1.0 / q));
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    auto sys = haarRandomSystem(n, N, seed);
    CHECK(kqConstant(sys, q, budgetOf(seed, 8)).value <= bound);
  }
}

TEST_CASE("l1 subspace systems have small Lambda_2 (spot check)") {
  double bound = 10.0 * std::sqrt(2.0 * std::log(3.0));
  for (std::uint64_t seed : {1ULL, 2ULL}) {
    auto sys = l1SubspaceSystem(8, 16, seed);
    CHECK(lambda2Constant(sys, budgetOf(seed, 8)).value <= bound);
  }
}

TEST_CASE("lemma: type against ell_1 is controlled by Lambda_2") {
  // one global constant over the catalogue
  std::vector<OrthonormalSystem> catalogue = {
      canonicalSystem(4, 8), fourierSystem(4, 16), haarRandomSystem(4, 16, 1),
      l1SubspaceSystem(4, 8, 1)};
  auto id8 = LinearMap::identity(FiniteNormedSpace::lp(8, 1.0));
  auto id8c = LinearMap::identity(FiniteNormedSpace::lp(8, 1.0, ScalarField::Complex));
  for (const auto& sys : catalogue) {
    const auto& op = sys.field == ScalarField::Complex ? id8c : id8;
    double tPhi = typeConst(sys, op, budgetOf(3, 6, 100)).value;
    double lam = lambda2Constant(sys, budgetOf(3, 6, 100)).value;
    CHECK(tPhi <= 20.0 * lam);
  }
}

TEST_CASE("lemma: cotype against ell_infty is controlled by K_q") {
  const double q = 4.0;
  std::vector<double> ratios;
  for (int n : {4, 8}) {
    auto sys = haarRandomSystem(n, 4 * n, 7);
    auto op = LinearMap::identity(FiniteNormedSpace::lp(n, kInf));
    double c = cotypeConst(sys, op, budgetOf(7, 6, 100)).value;
    double kq = kqConstant(sys, q, budgetOf(7, 6, 100)).value;
    double ratio = c * std::sqrt(std::log(n + 1.0)) / std::pow(n, 1.0 / q) / kq;
    ratios.push_back(ratio);
    CHECK(ratio <= 20.0);
  }
  CHECK(ratios[0] <= 5.0 * ratios[1]);
  CHECK(ratios[1] <= 5.0 * ratios[0]);
}

TEST_CASE("recipes build what they say") {
  auto canon = buildSystem(SystemRecipe{"canonical", 2, 2, 0, 0, 0});
  CHECK(canon.values(0, 0).real() == doctest::Approx(std::sqrt(2.0)));
  auto four = buildSystem(SystemRecipe{"fourier", 4, 16, 0, 0, 0});
  CHECK(four.functions() == 4);
  CHECK(four.atoms() == 16);
  CHECK_THROWS_AS(buildSystem(SystemRecipe{"nope", 1, 1, 0, 0, 0}), Error);
}
