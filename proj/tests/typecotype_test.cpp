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
  b.policy.sampleCount = 60000;
  b.surrogateSamples = 1024;
  return b;
}

LinearMap identityOn(int n, double p, ScalarField f = ScalarField::Real) {
  return LinearMap::identity(FiniteNormedSpace::lp(n, p, f));
}

}  // namespace

TEST_CASE("hilbert identities give constant one") {
  auto id = identityOn(3, 2.0);
  CHECK(c2n(id, 3, budgetOf()).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(t2n(id, 3, budgetOf()).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cotypeConst(canonicalUnitSystem(3), id, budgetOf()).value ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(typeConst(canonicalUnitSystem(3), id, budgetOf()).value ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(modifiedTypeConst(canonicalUnitSystem(3), id, budgetOf()).value ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("zero operator degenerates to zero") {
  LinearMap zero{FiniteNormedSpace::lp(2, 2.0), FiniteNormedSpace::lp(2, 2.0),
                 Matrix::Zero(2, 2)};
  CHECK(c2n(zero, 2, budgetOf()).value == 0.0);
  CHECK(typeConst(canonicalUnitSystem(2), zero, budgetOf()).value == 0.0);
}

TEST_CASE("cotype of ell_infty grows like sqrt(n / log n)") {
  for (int n : {4, 8}) {
    auto rep = c2n(identityOn(n, kInf), n, budgetOf(n));
    CHECK(rep.value >= 0.1 * std::sqrt(n / std::log(n + 1.0)));
  }
}

TEST_CASE("type of ell_1 from the coordinate family") {
  auto rep = t2n(identityOn(2, 1.0), 2, budgetOf(3));
  CHECK(rep.value >= 1.0);
  // coordinate witness value sqrt(2 + 4/pi)/sqrt(2), by the exact l1 formula
  CHECK(rep.value >= std::sqrt(2.0 + 4.0 / M_PI) / std::sqrt(2.0) * (1 - 1e-6));

  // canonical system: t_Phi = t_2^n, growth at least 0.1 sqrt(n)
  for (int n : {4, 8}) {
    auto t = typeConst(canonicalUnitSystem(n), identityOn(n, 1.0), budgetOf(n));
    CHECK(t.value >= 0.1 * std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("scale invariance of witness ratios") {
  Rng rng(77);
  auto sys = fourierSystem(3, 6);
  LinearMap t{FiniteNormedSpace::lp(3, kInf, ScalarField::Complex),
              FiniteNormedSpace::lp(3, 1.0, ScalarField::Complex),
              rng.gaussianMatrix(3, 3, ScalarField::Complex)};
  auto rep = cotypeConst(sys, t, budgetOf(5, 6, 80));
  RngPolicy policy{11, 40000};
  double base = cotypeRatioAt(sys, t, rep.witness, policy);
  double scaled = cotypeRatioAt(sys, t, Matrix(4.25 * rep.witness), policy);
  CHECK(scaled == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("U_n specialization: cotypeConst equals c2n") {
  Rng rng(13);
  LinearMap t{FiniteNormedSpace::lp(4, 1.0), FiniteNormedSpace::lp(3, 2.0),
              rng.gaussianMatrix(3, 4, ScalarField::Real)};
  auto viaSystem = cotypeConst(canonicalSystem(3, 3), t, budgetOf(1, 8));
  auto direct = c2n(t, 3, budgetOf(1, 8));
  CHECK(viaSystem.value == doctest::Approx(direct.value).epsilon(0.02));
}

TEST_CASE("corollary chain on random pairs") {
  Rng rng(29);
  for (int trial = 0; trial < 3; ++trial) {
    auto sys = trial == 0 ? fourierSystem(3, 6) : haarRandomSystem(3, 6, trial);
    ScalarField f = sys.field;
    double p = trial == 2 ? kInf : 1.0;
    LinearMap t{FiniteNormedSpace::lp(3, p, f), FiniteNormedSpace::lp(4, 2.0, f),
                rng.gaussianMatrix(4, 3, f)};

    auto type = typeConst(sys, t, budgetOf(trial, 8));
    OptBudget warm = budgetOf(trial, 8);
    warm.warmStarts.push_back(type.witness * sys.values);  // embedded f = sum phi_k x_k
    auto modified = modifiedTypeConst(sys, t, warm);
    auto tt = t2n(t, 3, budgetOf(trial, 8));
    CHECK(type.value <= modified.value * 1.05);
    CHECK(modified.value <= std::sqrt(2.0) * tt.value * 1.05);

    auto cot = cotypeConst(sys, t, budgetOf(trial, 8));
    auto cc = c2n(t, 3, budgetOf(trial, 8));
    CHECK(cot.value <= std::sqrt(2.0) * cc.value * 1.05);
  }
}

TEST_CASE("modified type witness re-evaluation is stable") {
  auto sys = canonicalSystem(3, 5);
  LinearMap t = identityOn(3, 1.0);
  auto rep = modifiedTypeConst(sys, t, budgetOf(4, 6, 100));
  RngPolicy policy{4, 60000};
  CHECK(modifiedTypeRatioAt(sys, t, rep.witness, policy) ==
        doctest::Approx(rep.value).epsilon(1e-9));
}

namespace {

// E max(|Z1|, |Z2|)^2 for a centered gaussian pair with covariance entries
// (s11, s22, s12), via max^2 = (Z1^2 + Z2^2)/2 + |Z1 - Z2||Z1 + Z2|/2 and the
// arcsine formula.
double exactMaxSqPair(double s11, double s22, double s12) {
  double su = s11 + s22 - 2 * s12;
  double sv = s11 + s22 + 2 * s12;
  double cross;
  if (su <= 1e-15 || sv <= 1e-15) {
    cross = std::abs(s11 - s22);
  } else {
    double rho = std::clamp((s11 - s22) / std::sqrt(su * sv), -1.0, 1.0);
    cross = (2.0 / M_PI) * std::sqrt(su * sv) *
            (std::sqrt(std::max(0.0, 1 - rho * rho)) + rho * std::asin(rho));
  }
  return (s11 + s22) / 2.0 + cross / 2.0;
}

}  // namespace

TEST_CASE("grid oracle certifies the n = 2 cotype estimate") {
  // c_2^2(I_{ell_inf^2}): sweep u = R(a) diag(1, s) R(b) over a 10^4 grid with
  // the exact closed form for E max(|Z1|, |Z2|)^2
  auto t = identityOn(2, kInf);
  auto rep = c2n(t, 2, budgetOf(6, 12));

  double best = 0;
  const int A = 22, S = 21;
  for (int ia = 0; ia < A; ++ia)
    for (int ib = 0; ib < A; ++ib)
      for (int is = 0; is < S; ++is) {
        double a = M_PI * ia / A, b = M_PI * ib / A, s = is / double(S - 1);
        Eigen::Matrix2d ra, rb, u;
        ra << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
        rb << std::cos(b), -std::sin(b), std::sin(b), std::cos(b);
        u = ra * Eigen::Vector2d(1.0, s).asDiagonal() * rb;
        double num = std::sqrt(u.col(0).cwiseAbs().maxCoeff() * u.col(0).cwiseAbs().maxCoeff() +
                               u.col(1).cwiseAbs().maxCoeff() * u.col(1).cwiseAbs().maxCoeff());
        Eigen::Matrix2d cov = u * u.transpose();
        double den = std::sqrt(exactMaxSqPair(cov(0, 0), cov(1, 1), cov(0, 1)));
        if (den > 0) best = std::max(best, num / den);
      }
  CHECK(rep.value >= best * 0.98);
  CHECK(rep.value <= best * 1.05);
}

TEST_CASE("reports are deterministic") {
  auto sys = fourierSystem(3, 6);
  LinearMap t = identityOn(3, kInf, ScalarField::Complex);
  auto a = cotypeConst(sys, t, budgetOf(21, 6, 60));
  auto b = cotypeConst(sys, t, budgetOf(21, 6, 60));
  CHECK(a.value == b.value);
  CHECK((a.witness - b.witness).norm() == 0.0);
}
