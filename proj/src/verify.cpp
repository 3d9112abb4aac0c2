#include "onslab/verify.hpp"

#include "onslab/constructions.hpp"
#include "onslab/geometry.hpp"
#include "onslab/idealnorms.hpp"
#include "onslab/stochastic.hpp"
#include "onslab/typecotype.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace onslab::verify {

namespace {

using Checks = std::vector<CheckResult>;

void push(Checks& out, std::string label, double measured, double bound, bool leq,
          std::string note = "") {
  CheckResult c;
  c.label = std::move(label);
  c.measured = measured;
  c.bound = bound;
  c.passed = leq ? measured <= bound : measured >= bound;
  c.note = std::move(note);
  out.push_back(std::move(c));
}

OptBudget budgetOf(const VerifyConfig& config, std::uint64_t salt, int restarts,
                   int iters = 150) {
  OptBudget b;
  b.restarts = restarts;
  b.maxIterations = iters;
  b.policy.masterSeed = deriveSeed(config.masterSeed, salt);
  b.policy.sampleCount = config.samples;
  b.surrogateSamples = 1024;
  return b;
}

LinearMap familyMap(const Matrix& u, const FiniteNormedSpace& X) {
  return LinearMap{FiniteNormedSpace::lp(static_cast<int>(u.cols()), 2.0, X.field), X, u};
}

std::string tag(const std::string& base, int i) { return base + "[" + std::to_string(i) + "]"; }

// factory catalogue used by the exact-identity checks
std::vector<std::pair<std::string, OrthonormalSystem>> catalogue(const VerifyConfig& config) {
  std::vector<std::pair<std::string, OrthonormalSystem>> out;
  out.emplace_back("canonical(4,8)", canonicalSystem(4, 8));
  out.emplace_back("fourier(4,16)", fourierSystem(4, 16));
  out.emplace_back("fourier(8,8)", fourierSystem(8, 8));
  out.emplace_back("haar(4,12)", haarRandomSystem(4, 12, deriveSeed(config.masterSeed, 1)));
  out.emplace_back("l1sub(4,12)", l1SubspaceSystem(4, 12, deriveSeed(config.masterSeed, 2)));
  SystemRecipe bourgain{"bourgainSubset", 0, 32, 4.0, 3, deriveSeed(config.masterSeed, 3)};
  out.emplace_back("bourgain(q=4,k<=3)", buildSystem(bourgain));
  return out;
}

Checks gramAndFrobeniusChecks(const VerifyConfig& config) {
  Checks out;
  Rng rng(deriveSeed(config.masterSeed, 10));
  for (auto& [name, sys] : catalogue(config)) {
    push(out, "1: gram deviation " + name, gramDeviation(sys.values, sys.space), 1e-10, true);
    LinearMap u{FiniteNormedSpace::lp(sys.functions(), 2.0, sys.field),
                FiniteNormedSpace::lp(5, 2.0, sys.field),
                rng.gaussianMatrix(5, sys.functions(), sys.field)};
    push(out, "1: |phi(u) - frobenius| " + name, std::abs(phiNorm(sys, u) - u.matrix.norm()),
         1e-10, true);
  }
  return out;
}

Checks gaugeChecks(const VerifyConfig& config) {
  Checks out;
  Rng rng(deriveSeed(config.masterSeed, 11));
  for (auto& [name, sys] : catalogue(config)) {
    const int n = sys.functions();
    auto contact = contactMeasure(sys);
    Matrix cov = Matrix::Zero(n, n);
    for (int j = 0; j < contact.points.cols(); ++j)
      cov += contact.masses(j) * contact.points.col(j) * contact.points.col(j).adjoint();
    push(out, "1: contact covariance vs I/n " + name,
         (cov - Matrix::Identity(n, n) / n).cwiseAbs().maxCoeff(), 1e-10, true);

    double worstGauge = 0;
    for (int j = 0; j < contact.points.cols(); ++j)
      worstGauge = std::max(worstGauge, minkowskiGauge(contact, contact.points.col(j)));
    push(out, "1: gauge(contact point) <= 1 " + name, worstGauge, 1.0 + 1e-9, true);

    double acc = 0;
    for (int j = 0; j < sys.atoms(); ++j) {
      Vector f = sys.values.col(j);
      if (f.norm() < 1e-14) continue;
      double g = minkowskiGauge(contact, f);
      acc += sys.space.weights(j) * g * g;
    }
    const bool realField = sys.field == ScalarField::Real;
    // complex systems go through the documented 72-gon relaxation
    push(out, "1: |phi(iota_Phi) - sqrt(n)| " + name,
         std::abs(std::sqrt(acc) - std::sqrt(double(n))), realField ? 1e-10 : 2e-3, true);

    Vector x = rng.gaussianVector(n, sys.field);
    push(out, "1: gauge dominates the euclidean norm " + name,
         x.norm() * (1 - 1e-9) - minkowskiGauge(contact, x), 0.0, true);
  }
  return out;
}

Checks criterion1(const VerifyConfig& config) {
  Checks out = gramAndFrobeniusChecks(config);
  Checks gauge = gaugeChecks(config);
  out.insert(out.end(), gauge.begin(), gauge.end());
  return out;
}

Checks criterion2(const VerifyConfig& config) {
  Checks out;
  if (config.restarts < 32) {
    CheckResult c;
    c.label = "2: budget guard";
    c.passed = false;
    c.note = "insufficient restarts: the sandwich suite requires >= 32";
    out.push_back(c);
    return out;
  }
  RngPolicy policy{deriveSeed(config.masterSeed, 20), config.samples};
  Rng rng(deriveSeed(config.masterSeed, 21));
  const double codomains[3] = {kInf, 1.0, 2.0};
  for (int i = 0; i < 30; ++i) {
    const int n = 3 + (i % 4);
    const int N = 2 * n + (i % 3) * n;
    OrthonormalSystem sys;
    switch (i % 4) {
      case 0: sys = fourierSystem(n, N); break;
      case 1: sys = haarRandomSystem(n, N, deriveSeed(config.masterSeed, 22 + i)); break;
      case 2: sys = l1SubspaceSystem(n, N, deriveSeed(config.masterSeed, 22 + i)); break;
      default: sys = canonicalSystem(n, N); break;
    }
    const int m = 4 + (i % 3) * 4;
    const double p = codomains[i % 3];
    FiniteNormedSpace cod = FiniteNormedSpace::lp(m, p, sys.field);
    LinearMap u{FiniteNormedSpace::lp(n, 2.0, sys.field), cod,
                rng.gaussianMatrix(m, n, sys.field)};

    auto ell = gaussianAverage(u, policy);
    double lo = ell.direction == Direction::Exact ? ell.value : ell.lo;
    auto pip = piPhi(sys, u, budgetOf(config, 23 + i, config.restarts, 120));
    push(out, tag("2: ell(u).lo <= 1.05 pi_Phi(u)", i), lo, 1.05 * pip.value, true);

    if (p == 2.0)
      push(out, tag("2: phi(u) <= pi_2(u) on ell_2", i), phiNorm(sys, u),
           u.matrix.norm() + 1e-12, true);

    auto sph = sphereAverageIdentity(u, policy);
    double elo = ell.direction == Direction::Exact ? ell.value * (1 - 1e-9) : ell.lo;
    double ehi = ell.direction == Direction::Exact ? ell.value * (1 + 1e-9) : ell.hi;
    bool overlap = elo <= sph.hi && sph.lo <= ehi;
    CheckResult c;
    c.label = tag("2: gaussian and sphere brackets overlap", i);
    c.passed = overlap;
    c.measured = sph.value;
    c.bound = ell.value;
    out.push_back(c);
  }
  return out;
}

Checks criterion3(const VerifyConfig& config) {
  Checks out;
  Rng rng(deriveSeed(config.masterSeed, 30));
  const double doms[3] = {2.0, kInf, 1.0};
  const double cods[3] = {kInf, 2.0, 1.0};
  for (int i = 0; i < 20; ++i) {
    const int n = 4 + (i % 3) * 3;  // family sizes 4, 7, 10
    const int m = 6;
    LinearMap t{FiniteNormedSpace::lp(m, doms[i % 3], ScalarField::Real),
                FiniteNormedSpace::lp(5, cods[i % 3], ScalarField::Real),
                rng.gaussianMatrix(5, m, ScalarField::Real)};
    Matrix family = rng.gaussianMatrix(m, n, ScalarField::Real);
    auto bucketed = equalNormBucketing(t, family);
    CheckResult cert;
    cert.label = tag("3: certificate n <= |I| < 6n", i);
    cert.measured = bucketed.certificate.replicated;
    cert.passed = bucketed.certificate.valid;
    out.push_back(cert);

    auto ratio = [&](const Matrix& fam) {
      double num = 0;
      for (int k = 0; k < fam.cols(); ++k) {
        double nv = norm(t.matrix * fam.col(k), t.codomain);
        num += nv * nv;
      }
      return std::sqrt(num) / weakL2Norm(fam, t.domain);
    };
    push(out, tag("3: equal-norm ratio transfer", i), ratio(bucketed.family),
         (1 - 0.02) * ratio(family) / std::sqrt(6.0), false);
  }
  return out;
}

Checks criterion4(const VerifyConfig& config) {
  Checks out;
  Rng rng(deriveSeed(config.masterSeed, 40));
  const std::pair<int, int> shapes[3] = {{6, 12}, {9, 27}, {12, 48}};
  for (auto [n, N] : shapes) {
    double worstMargin = 1e300;
    double warmFloor = 1e300;
    for (int trial = 0; trial < 100; ++trial) {
      Matrix g = rng.gaussianMatrix(n, N, ScalarField::Real);
      Matrix rows = gramSchmidt(g, MeasureSpace::unit(N)).values;
      auto res = greedyCoordinateBasis(rows, N);
      for (int k = 0; k < res.certified; ++k)
        worstMargin = std::min(worstMargin, res.guarantees[static_cast<std::size_t>(k)] -
                                                double(n - 2 * (k + 1) + 2) / N);
      double sup = 0;
      for (int j = 0; j < N; ++j) {
        double best = 0;
        for (int l = 0; l < n; ++l) best = std::max(best, std::norm(res.basis(l, j)));
        sup += best;
      }
      warmFloor = std::min(warmFloor, std::sqrt(sup));
    }
    push(out,
         "4: greedy step bound (n,N)=(" + std::to_string(n) + "," + std::to_string(N) + ")",
         worstMargin, -1e-12, false);
    if (n >= 12)
      push(out, "4: G'' warm start floor sqrt(n^2/12N) at n=" + std::to_string(n), warmFloor,
           std::sqrt(double(n) * n / (12.0 * N)), false);
  }
  return out;
}

Checks criterion5(const VerifyConfig& config) {
  Checks out;
  Rng rng(deriveSeed(config.masterSeed, 50));
  for (int n : {4, 8, 16}) {
    const int N = 4 * n;
    for (int si = 0; si < 2; ++si) {
      OrthonormalSystem sys = si == 0
                                  ? fourierSystem(n, N)
                                  : haarRandomSystem(n, N, deriveSeed(config.masterSeed, 51 + n));
      for (int ti = 0; ti < 2; ++ti) {
        LinearMap t =
            ti == 0 ? LinearMap::identity(FiniteNormedSpace::lp(n, kInf, sys.field))
                    : LinearMap{FiniteNormedSpace::lp(n, 2.0, sys.field),
                                FiniteNormedSpace::lp(n, 2.0, sys.field),
                                rng.gaussianMatrix(n, n, sys.field)};
        auto c2 = c2n(t, n, budgetOf(config, 52 + n + si + 2 * ti, 10, 100));
        Matrix u = c2.witness;
        double familyValue = 0;
        for (int k = 0; k < n; ++k) {
          double nv = norm(t.matrix * u.col(k), t.codomain);
          familyValue += nv * nv;
        }
        familyValue = std::sqrt(familyValue);
        auto pip = piPhi(sys, compose(t, familyMap(u, t.domain)),
                         budgetOf(config, 53 + n + si + 2 * ti, 12, 100));
        std::ostringstream label;
        label << "5: proportional cotype n=" << n << (si ? " haar" : " fourier")
              << (ti ? " random" : " id_linf");
        push(out, label.str(), familyValue, 1.1 * 12.0 * std::sqrt(double(N) / n) * pip.value,
             true);
      }
    }
  }
  return out;
}

Checks criterion6(const VerifyConfig& config) {
  Checks out;
  Rng rng(deriveSeed(config.masterSeed, 60));
  for (int n : {2, 4, 8, 16}) {
    const int N = 4 * n;
    auto fourier = fourierSystem(n, N);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      LinearMap u{FiniteNormedSpace::lp(n, 2.0, ScalarField::Complex),
                  FiniteNormedSpace::lp(n, kInf, ScalarField::Complex),
                  rng.gaussianMatrix(n, n, ScalarField::Complex)};
      auto p2 = pi2n(u, n, budgetOf(config, 61 + n + i, 6, 80));
      OptBudget shared = budgetOf(config, 61 + n + i, 6, 80);
      shared.warmStarts.push_back(p2.witness);
      auto pe = piPhi(fourier, u, shared);
      if (pe.value > 0) worst = std::max(worst, p2.value / pe.value);
    }
    push(out, "6: pi_2^n / pi_{E_n} <= 2 at n=" + std::to_string(n), worst, 2.0, true);
  }
  return out;
}

Checks criterion7(const VerifyConfig& config) {
  Checks out;
  const int n = 8, N = 64;
  const double q = 4.0;
  double meanKq = 0;
  double worstRatio = 0;
  for (int seed = 0; seed < 20; ++seed) {
    auto sys = haarRandomSystem(n, N, deriveSeed(config.masterSeed, 70 + seed));
    double kq = kqConstant(sys, q, budgetOf(config, 71 + seed, 8, 100)).value;
    meanKq += kq / 20.0;
    auto op = LinearMap::identity(FiniteNormedSpace::lp(n, kInf));
    double c = cotypeConst(sys, op, budgetOf(config, 72 + seed, 8, 100)).value;
    worstRatio = std::max(worstRatio,
                          c * std::sqrt(std::log(n + 1.0)) / std::pow(n, 1.0 / q) / kq);
  }
  push(out, "7: mean K_q(haar(8,64)) <= 10 max(sqrt(q), sqrt(n)/N^(1/q))", meanKq,
       10.0 * std::max(std::sqrt(q), std::sqrt(double(n)) * std::pow(N, -1.0 / q)), true);
  push(out, "7: cotype / K_q ratio <= 20", worstRatio, 20.0, true);
  return out;
}

Checks criterion8(const VerifyConfig& config) {
  Checks out;
  const int n = 16, N = 32;
  std::vector<double> lambdas;
  double worstRatio = 0;
  for (int seed = 0; seed < 20; ++seed) {
    auto sys = l1SubspaceSystem(n, N, deriveSeed(config.masterSeed, 80 + seed));
    double lam = lambda2Constant(sys, budgetOf(config, 81 + seed, 8, 100)).value;
    lambdas.push_back(lam);
    auto op = LinearMap::identity(FiniteNormedSpace::lp(16, 1.0));
    double t = typeConst(sys, op, budgetOf(config, 82 + seed, 6, 80)).value;
    worstRatio = std::max(worstRatio, t / lam);
  }
  std::nth_element(lambdas.begin(), lambdas.begin() + 10, lambdas.end());
  push(out, "8: median Lambda_2(l1sub(16,32)) <= 10 sqrt(2 log 3)", lambdas[10],
       10.0 * std::sqrt(2.0 * std::log(3.0)), true);
  push(out, "8: type(ell_1^16) / Lambda_2 <= 20", worstRatio, 20.0, true);
  return out;
}

Checks criterion9(const VerifyConfig& config) {
  Checks out;
  Rng rng(deriveSeed(config.masterSeed, 90));
  double worstTypeChain = 0, worstModChain = 0, worstCotypeChain = 0;
  for (int i = 0; i < 20; ++i) {
    const int n = 3 + (i % 2);
    const int N = 2 * n + (i % 3);
    OrthonormalSystem sys;
    switch (i % 3) {
      case 0: sys = fourierSystem(n, N); break;
      case 1: sys = haarRandomSystem(n, N, deriveSeed(config.masterSeed, 91 + i)); break;
      default: sys = l1SubspaceSystem(n, N, deriveSeed(config.masterSeed, 91 + i)); break;
    }
    const double doms[3] = {1.0, kInf, 2.0};
    LinearMap t{FiniteNormedSpace::lp(4, doms[i % 3], sys.field),
                FiniteNormedSpace::lp(4, 2.0, sys.field),
                rng.gaussianMatrix(4, 4, sys.field)};

    auto type = typeConst(sys, t, budgetOf(config, 92 + i, 8, 100));
    OptBudget warm = budgetOf(config, 92 + i, 8, 100);
    warm.warmStarts.push_back(type.witness * sys.values);
    auto modified = modifiedTypeConst(sys, t, warm);
    auto tt = t2n(t, n, budgetOf(config, 93 + i, 8, 100));
    if (modified.value > 0) worstTypeChain = std::max(worstTypeChain, type.value / modified.value);
    if (tt.value > 0)
      worstModChain = std::max(worstModChain, modified.value / (std::sqrt(2.0) * tt.value));

    auto cot = cotypeConst(sys, t, budgetOf(config, 94 + i, 8, 100));
    auto cc = c2n(t, n, budgetOf(config, 95 + i, 8, 100));
    if (cc.value > 0)
      worstCotypeChain = std::max(worstCotypeChain, cot.value / (std::sqrt(2.0) * cc.value));
  }
  push(out, "9: type <= 1.05 modifiedType", worstTypeChain, 1.05, true);
  push(out, "9: modifiedType <= 1.05 sqrt(2) t2n", worstModChain, 1.05, true);
  push(out, "9: cotype <= 1.05 sqrt(2) c2n", worstCotypeChain, 1.05, true);
  return out;
}

Checks criterion10(const VerifyConfig& config) {
  Checks out;
  auto fourier = fourierSystem(16, 16);
  auto gpp = gDoublePrimeFunctional(fourier, budgetOf(config, 100, 6, 120));
  double supIntegralValue = gpp.value * gpp.value;
  push(out, "10: rotated full fourier reaches int sup >= 0.9 n", supIntegralValue, 0.9 * 16,
       false);
  OrthonormalSystem rotated{fourier.space, fourier.field, gpp.witness * fourier.values};
  auto ext = disjointSupportExtract(rotated, 0.45);
  push(out, "10: |J| >= 8 at eta = 0.45", static_cast<double>(ext.selected.size()), 8.0,
       false);

  auto canon = canonicalSystem(6, 9);
  auto canonExt = disjointSupportExtract(canon, 0.9);
  double worst = 1;
  for (int l = 0; l < 6; ++l) worst = std::min(worst, canonExt.masses(l));
  push(out, "10: canonical masses are identically one", worst, 1.0 - 1e-12, false);
  return out;
}

Checks criterion11(const VerifyConfig& config) {
  Checks out;
  auto growth = [&](auto&& value) { return value(16) / value(4); };

  auto c2nAt = [&](int n) {
    return c2n(LinearMap::identity(FiniteNormedSpace::lp(n, kInf)), n,
               budgetOf(config, 110 + n, 8, 100))
        .value;
  };
  double g1 = growth(c2nAt);
  push(out, "11: c2n(I_linf) grows by >= 1.25 from n=4 to 16", g1, 1.25, false);

  auto fourierAt = [&](int n) {
    auto sys = fourierSystem(n, 4 * n);
    return cotypeConst(sys, LinearMap::identity(FiniteNormedSpace::lp(n, kInf, sys.field)),
                       budgetOf(config, 112 + n, 8, 100))
        .value;
  };
  double g2 = growth(fourierAt);
  push(out, "11: cotype(fourier, I_linf) grows by >= 1.25", g2, 1.25, false);

  auto haarAt = [&](int n) {
    auto sys = haarRandomSystem(n, n * n, deriveSeed(config.masterSeed, 113));
    return cotypeConst(sys, LinearMap::identity(FiniteNormedSpace::lp(n, kInf)),
                       budgetOf(config, 114 + n, 8, 100))
        .value;
  };
  double g3 = growth(haarAt);
  push(out, "11: haar(n = sqrt(N)) growth <= fourier growth", g3, g2, true);
  return out;
}

}  // namespace

int criterionCount() { return 11; }

std::string criterionTitle(int id) {
  switch (id) {
    case 1: return "core identities (gram, frobenius, contact measure, gauge)";
    case 2: return "sandwich suite: ell <= pi_Phi <= pi_2";
    case 3: return "equal-norm reduction certificate and sqrt(6) transfer";
    case 4: return "greedy coordinate-basis guarantee";
    case 5: return "proportional cotype: c2n <= 1.1 * 12 sqrt(N/n) * phi-witness";
    case 6: return "marcinkiewicz-zygmund direction on sampled fourier";
    case 7: return "random-system cotype smallness via K_q";
    case 8: return "l1-subspace type smallness via Lambda_2";
    case 9: return "corollary chain: type <= modified <= sqrt(2) t2n";
    case 10: return "disjoint-support loop on full fourier";
    case 11: return "growth-rate contrast across system families";
    default: return "unknown";
  }
}

std::vector<CheckResult> runCriterion(int id, const VerifyConfig& config) {
  try {
    switch (id) {
      case 1: return criterion1(config);
      case 2: return criterion2(config);
      case 3: return criterion3(config);
      case 4: return criterion4(config);
      case 5: return criterion5(config);
      case 6: return criterion6(config);
      case 7: return criterion7(config);
      case 8: return criterion8(config);
      case 9: return criterion9(config);
      case 10: return criterion10(config);
      case 11: return criterion11(config);
      default: throw Error("unknown criterion " + std::to_string(id));
    }
  } catch (const std::exception& e) {
    CheckResult c;
    c.label = "criterion " + std::to_string(id) + " raised";
    c.passed = false;
    c.note = e.what();
    return {c};
  }
}

std::vector<std::string> suiteNames() {
  return {"core", "sandwich", "epz", "greedy", "mz", "randomSystems", "l1Systems",
          "geometryLoop", "gauge"};
}

SuiteReport runSuite(const std::string& name, const VerifyConfig& config) {
  SuiteReport report;
  report.suite = name;
  auto append = [&](Checks c) {
    report.checks.insert(report.checks.end(), c.begin(), c.end());
  };
  if (name == "core") {
    append(gramAndFrobeniusChecks(config));
  } else if (name == "gauge") {
    append(gaugeChecks(config));
  } else if (name == "sandwich") {
    append(runCriterion(2, config));
    append(runCriterion(9, config));
  } else if (name == "epz") {
    append(runCriterion(3, config));
  } else if (name == "greedy") {
    append(runCriterion(4, config));
  } else if (name == "mz") {
    append(runCriterion(6, config));
  } else if (name == "randomSystems") {
    append(runCriterion(5, config));
    append(runCriterion(7, config));
    append(runCriterion(11, config));
  } else if (name == "l1Systems") {
    append(runCriterion(8, config));
  } else if (name == "geometryLoop") {
    append(runCriterion(10, config));
  } else {
    throw Error("unknown suite '" + name + "'");
  }
  return report;
}

}  // namespace onslab::verify
