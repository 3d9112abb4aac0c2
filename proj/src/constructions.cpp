#include "onslab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace onslab {

namespace {

// Rescale to a probability space: weights p/P, values sqrt(P) phi keep the
// Gram identity.
OrthonormalSystem asProbability(const OrthonormalSystem& sys) {
  const double total = sys.space.total();
  if (std::abs(total - 1.0) < 1e-12) return sys;
  OrthonormalSystem out;
  out.space = MeasureSpace(sys.space.weights / total);
  out.field = sys.field;
  out.values = sys.values * std::sqrt(total);
  return out;
}

}  // namespace

OrthonormalSystem fourierSystem(int n, int N) {
  if (n < 1 || n > N) throw Error("fourierSystem: need 1 <= n <= N");
  Matrix values(n, N);
  for (int k = 1; k <= n; ++k)
    for (int j = 0; j < N; ++j)
      values(k - 1, j) = std::polar(1.0, 2.0 * M_PI * k * j / N);
  return validateSystem(std::move(values), MeasureSpace::uniform(N), kDefaultOrthoTol,
                        ScalarField::Complex);
}

OrthonormalSystem fourierSectionSystem(const std::vector<int>& frequencies, int N) {
  const int n = static_cast<int>(frequencies.size());
  if (n < 1 || n > N) throw Error("fourierSectionSystem: need 1 <= |freqs| <= N");
  std::vector<int> residues;
  for (int f : frequencies) residues.push_back(((f % N) + N) % N);
  std::vector<int> sorted = residues;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error("fourierSectionSystem: frequencies collide mod N");
  Matrix values(n, N);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < N; ++j)
      values(k, j) = std::polar(1.0, 2.0 * M_PI * residues[k] * j / N);
  return validateSystem(std::move(values), MeasureSpace::uniform(N), kDefaultOrthoTol,
                        ScalarField::Complex);
}

OrthonormalSystem canonicalSystem(int n, int N) {
  if (n < 1 || n > N) throw Error("canonicalSystem: need 1 <= n <= N");
  Matrix values = Matrix::Zero(n, N);
  for (int k = 0; k < n; ++k) values(k, k) = std::sqrt(static_cast<double>(N));
  return validateSystem(std::move(values), MeasureSpace::uniform(N));
}

OrthonormalSystem haarRandomSystem(int n, int N, std::uint64_t seed, ScalarField field) {
  if (n < 1 || n > N) throw Error("haarRandomSystem: need 1 <= n <= N");
  Rng rng(deriveSeed(seed, 0x4AA2ULL));
  Matrix rows = haarRows(n, N, rng, field);
  return validateSystem(std::sqrt(static_cast<double>(N)) * rows, MeasureSpace::uniform(N),
                        kDefaultOrthoTol, field);
}

OrthonormalSystem l1SubspaceSystem(int n, int N, std::uint64_t seed) {
  if (n < 1 || n >= N) throw Error("l1SubspaceSystem: need 1 <= n < N");
  Rng rng(deriveSeed(seed, 0x11E5ULL));
  Matrix span = rng.gaussianMatrix(n, N, ScalarField::Real);
  return gramSchmidt(std::move(span), MeasureSpace::uniform(N));
}

std::vector<std::vector<int>> bourgainSubset(double q, int kmax, std::uint64_t seed) {
  if (!(q > 2.0)) throw Error("bourgainSubset: need q > 2");
  if (kmax < 1) throw Error("bourgainSubset: need kmax >= 1");
  std::vector<std::vector<int>> sets;
  Rng rng(deriveSeed(seed, 0xB0B6ULL));
  for (int k = 1; k <= kmax; ++k) {
    const std::int64_t blockStart = 1LL << k;
    const std::int64_t blockSize = 1LL << k;
    const std::int64_t want = static_cast<std::int64_t>(std::pow(4.0, k / q));
    if (want > blockSize)
      throw CardinalityOverflow("bourgainSubset: |S_" + std::to_string(k) + "| = " +
                                std::to_string(want) + " exceeds block of " +
                                std::to_string(blockSize));
    // partial Fisher-Yates over the dyadic block
    std::vector<int> block(static_cast<std::size_t>(blockSize));
    std::iota(block.begin(), block.end(), static_cast<int>(blockStart));
    std::vector<int> pick;
    for (std::int64_t i = 0; i < want; ++i) {
      std::int64_t j = i + static_cast<std::int64_t>(rng.uniform01() * (blockSize - i));
      j = std::min(j, blockSize - 1);
      std::swap(block[static_cast<std::size_t>(i)], block[static_cast<std::size_t>(j)]);
      pick.push_back(block[static_cast<std::size_t>(i)]);
    }
    std::sort(pick.begin(), pick.end());
    sets.push_back(std::move(pick));
  }
  return sets;
}

double spanLqNorm(const OrthonormalSystem& sys, const Vector& alpha, double q) {
  OrthonormalSystem prob = asProbability(sys);
  Vector h = prob.values.transpose() * alpha;
  FiniteNormedSpace lq = FiniteNormedSpace::weighted(prob.atoms(), q, prob.space.weights,
                                                     prob.field);
  return norm(h, lq);
}

namespace {

// sphere ascent of alpha -> || sum alpha_k phi_k ||_{L_q}; sign = +1 maximizes,
// sign = -1 minimizes (used for the Lambda_2 denominator).
EstimateReport sphereExtremizeLq(const OrthonormalSystem& sysIn, double q, double sign,
                                 const OptBudget& budget, const char* method) {
  OrthonormalSystem sys = asProbability(sysIn);
  const int n = sys.functions();
  FiniteNormedSpace lq =
      FiniteNormedSpace::weighted(sys.atoms(), q, sys.space.weights, sys.field);
  const Matrix valuesT = sys.values.transpose();

  AscentProblem problem;
  problem.value = [&](const Matrix& a) { return sign * norm(valuesT * a.col(0), lq); };
  problem.gradient = [&](const Matrix& a) {
    Vector h = valuesT * a.col(0);
    Vector g = sys.values.conjugate() * normGradient(h, lq);
    return (sign * g).eval();
  };
  problem.project = [](const Matrix& a) {
    double f = a.norm();
    return f == 0.0 ? a : (a / f).eval();
  };
  auto start = [&](int r) -> Matrix {
    if (r == 0) return Matrix(Vector::Ones(n) / std::sqrt(static_cast<double>(n)));
    if (r == 1) return Matrix(Vector::Unit(n, 0));
    Rng rng(deriveSeed(budget.policy.masterSeed, 0xA1f4ULL + static_cast<std::uint64_t>(r)));
    return Matrix(rng.gaussianVector(n, sys.field).normalized());
  };
  EstimateReport rep = maximizeWithRestarts(problem, start, budget, method);
  rep.witness = problem.project(rep.witness);
  rep.value = sign * (sign * norm(valuesT * rep.witness.col(0), lq));
  return rep;
}

}  // namespace

EstimateReport kqConstant(const OrthonormalSystem& sys, double q, const OptBudget& budget) {
  if (!(q >= 2.0)) throw Error("kqConstant: need q >= 2");
  EstimateReport rep = sphereExtremizeLq(sys, q, +1.0, budget, "kq-sphere-ascent");
  rep.value = spanLqNorm(sys, rep.witness.col(0), q);
  return rep;
}

EstimateReport lambda2Constant(const OrthonormalSystem& sys, const OptBudget& budget) {
  EstimateReport rep = sphereExtremizeLq(sys, 1.0, -1.0, budget, "lambda2-descent");
  double minL1 = spanLqNorm(sys, rep.witness.col(0), 1.0);
  rep.value = minL1 == 0.0 ? kInf : 1.0 / minL1;
  return rep;
}

OrthonormalSystem buildSystem(const SystemRecipe& recipe) {
  if (recipe.kind == "canonical") return canonicalSystem(recipe.n, recipe.N);
  if (recipe.kind == "fourier") return fourierSystem(recipe.n, recipe.N);
  if (recipe.kind == "haarRandom") return haarRandomSystem(recipe.n, recipe.N, recipe.seed);
  if (recipe.kind == "l1Subspace") return l1SubspaceSystem(recipe.n, recipe.N, recipe.seed);
  if (recipe.kind == "bourgainSubset") {
    auto sets = bourgainSubset(recipe.q, recipe.kmax, recipe.seed);
    std::vector<int> freqs;
    for (const auto& s : sets) freqs.insert(freqs.end(), s.begin(), s.end());
    int N = recipe.N;
    const int maxFreq = 1 << (recipe.kmax + 1);
    if (N == 0) N = 2 * maxFreq;
    if (N < maxFreq) throw Error("buildSystem: N too small for the bourgain frequencies");
    return fourierSectionSystem(freqs, N);
  }
  throw Error("buildSystem: unknown kind '" + recipe.kind + "'");
}

}  // namespace onslab
