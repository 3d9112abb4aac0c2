#include "onslab/typecotype.hpp"

#include "onslab/stochastic.hpp"

#include <cmath>

namespace onslab {

namespace {

ScalarField combineFields(const OrthonormalSystem& sys, const LinearMap& T) {
  return (sys.field == ScalarField::Complex || T.domain.field == ScalarField::Complex ||
          T.codomain.field == ScalarField::Complex)
             ? ScalarField::Complex
             : ScalarField::Real;
}

// (sum_j w_j || B u col_j ||_cod^2)^(1/2): covers both the exact phi-norm
// (cols = system values, w = atom masses) and the frozen Monte-Carlo
// surrogate of ell (cols = sample stream, w = 1/S).
struct QuadMean {
  Matrix cols;
  RealVector weights;
  Matrix b;
  FiniteNormedSpace cod;

  double value(const Matrix& u) const {
    double acc = 0;
    for (int j = 0; j < cols.cols(); ++j) {
      double nv = norm(b * (u * cols.col(j)), cod);
      acc += weights(j) * nv * nv;
    }
    return std::sqrt(acc);
  }

  Matrix gradient(const Matrix& u) const {
    const double f = value(u);
    Matrix g = Matrix::Zero(u.rows(), u.cols());
    if (f == 0.0) return g;
    for (int j = 0; j < cols.cols(); ++j) {
      Vector cj = cols.col(j);
      Vector y = b * (u * cj);
      double nv = norm(y, cod);
      if (nv == 0.0) continue;
      g.noalias() += weights(j) * nv * (b.adjoint() * normGradient(y, cod)) * cj.adjoint();
    }
    return g / f;
  }
};

QuadMean phiQuad(const OrthonormalSystem& sys, const Matrix& b, FiniteNormedSpace cod) {
  return QuadMean{sys.values, sys.space.weights, b, std::move(cod)};
}

QuadMean streamQuad(int n, const OptBudget& budget, ScalarField field, const Matrix& b,
                    FiniteNormedSpace cod) {
  Matrix stream = fixedGaussianStream(n, budget.surrogateSamples,
                                      deriveSeed(budget.policy.masterSeed, 0x5EEDULL), field);
  RealVector w = RealVector::Constant(stream.cols(), 1.0 / stream.cols());
  return QuadMean{std::move(stream), std::move(w), b, std::move(cod)};
}

Matrix canonicalFamily(int m, int n) {
  Matrix u = Matrix::Zero(m, n);
  for (int k = 0; k < n; ++k) u(k % m, k) = 1.0;
  return u;
}

Matrix normalizeFrobenius(const Matrix& u) {
  double f = u.norm();
  return f == 0.0 ? u : (u / f).eval();
}

EstimateReport zeroReport(const char* method) {
  EstimateReport rep;
  rep.value = 0.0;
  rep.direction = Direction::Exact;
  rep.method = method;
  return rep;
}

LinearMap familyMap(const Matrix& u, const FiniteNormedSpace& X) {
  FiniteNormedSpace dom = FiniteNormedSpace::lp(static_cast<int>(u.cols()), 2.0, X.field);
  return LinearMap{dom, X, u};
}

EstimateReport ratioMaximize(const QuadMean& num, const QuadMean& den, int rows, int cols,
                             ScalarField field, const OptBudget& budget, const char* method) {
  AscentProblem problem;
  problem.value = [&](const Matrix& u) {
    double d = den.value(u);
    return d == 0.0 ? 0.0 : num.value(u) / d;
  };
  problem.gradient = [&](const Matrix& u) {
    double d = den.value(u);
    if (d == 0.0) return Matrix::Zero(u.rows(), u.cols()).eval();
    double f = num.value(u);
    Matrix gn = num.gradient(u);
    Matrix gd = den.gradient(u);
    return ((gn * d - f * gd) / (d * d)).eval();
  };
  problem.project = normalizeFrobenius;

  auto start = [&](int r) -> Matrix {
    if (r == 0) return canonicalFamily(rows, cols);
    Rng rng(deriveSeed(budget.policy.masterSeed, 0xFA0ULL + static_cast<std::uint64_t>(r)));
    return rng.gaussianMatrix(rows, cols, field);
  };
  return maximizeWithRestarts(problem, start, budget, method);
}

}  // namespace

Matrix coefficientFamily(const OrthonormalSystem& sys, const LinearMap& T,
                         const Matrix& fValues) {
  // c_k = sum_j p_j (T f(omega_j)) conj(phi_k(omega_j))
  return T.matrix * fValues * sys.space.weights.asDiagonal() * sys.values.adjoint();
}

double cotypeRatioAt(const OrthonormalSystem& sys, const LinearMap& T, const Matrix& family,
                     const RngPolicy& policy) {
  double num = phiNorm(sys, compose(T, familyMap(family, T.domain)));
  double den = gaussianAverage(familyMap(family, T.domain), policy).value;
  return den == 0.0 ? 0.0 : num / den;
}

double typeRatioAt(const OrthonormalSystem& sys, const LinearMap& T, const Matrix& family,
                   const RngPolicy& policy) {
  double num = gaussianAverage(compose(T, familyMap(family, T.domain)), policy).value;
  double den = phiNorm(sys, familyMap(family, T.domain));
  return den == 0.0 ? 0.0 : num / den;
}

double modifiedTypeRatioAt(const OrthonormalSystem& sys, const LinearMap& T,
                           const Matrix& fValues, const RngPolicy& policy) {
  Matrix c = coefficientFamily(sys, T, fValues);
  double num = gaussianAverage(familyMap(c, T.codomain), policy).value;
  double den = 0;
  for (int j = 0; j < sys.atoms(); ++j) {
    double nv = norm(fValues.col(j), T.domain);
    den += sys.space.weights(j) * nv * nv;
  }
  den = std::sqrt(den);
  return den == 0.0 ? 0.0 : num / den;
}

EstimateReport cotypeConst(const OrthonormalSystem& sys, const LinearMap& T,
                           const OptBudget& budget) {
  const int n = sys.functions();
  const FiniteNormedSpace& X = T.domain;
  if (T.matrix.norm() == 0.0) return zeroReport("cotype-zero-operator");
  const ScalarField field = combineFields(sys, T);

  QuadMean num = phiQuad(sys, T.matrix, T.codomain);
  QuadMean den;
  if (X.isHilbert()) {
    // ell(u) on a Hilbert space is the weighted Frobenius norm; one "sample"
    // per basis direction reproduces it exactly
    den = QuadMean{Matrix::Identity(n, n), RealVector::Ones(n),
                   Matrix::Identity(X.dim, X.dim), X};
  } else {
    den = streamQuad(n, budget, field, Matrix::Identity(X.dim, X.dim), X);
  }

  EstimateReport rep = ratioMaximize(num, den, X.dim, n, field, budget, "cotype-ascent");
  rep.witness = normalizeFrobenius(rep.witness);
  rep.value = cotypeRatioAt(sys, T, rep.witness, budget.policy);
  return rep;
}

EstimateReport typeConst(const OrthonormalSystem& sys, const LinearMap& T,
                         const OptBudget& budget) {
  const int n = sys.functions();
  const FiniteNormedSpace& X = T.domain;
  if (T.matrix.norm() == 0.0) return zeroReport("type-zero-operator");
  const ScalarField field = combineFields(sys, T);

  QuadMean den = phiQuad(sys, Matrix::Identity(X.dim, X.dim), X);
  QuadMean num;
  if (T.codomain.isHilbert()) {
    num = QuadMean{Matrix::Identity(n, n), RealVector::Ones(n), T.matrix, T.codomain};
  } else {
    num = streamQuad(n, budget, field, T.matrix, T.codomain);
  }

  EstimateReport rep = ratioMaximize(num, den, X.dim, n, field, budget, "type-ascent");
  rep.witness = normalizeFrobenius(rep.witness);
  if (rep.witness.norm() > 0 &&
      phiNorm(sys, familyMap(rep.witness, X)) < 1e-12 * rep.witness.norm())
    throw DegenerateDenominator("typeConst: phi-norm vanished on a nonzero family");
  rep.value = typeRatioAt(sys, T, rep.witness, budget.policy);
  return rep;
}

EstimateReport modifiedTypeConst(const OrthonormalSystem& sys, const LinearMap& T,
                                 const OptBudget& budget) {
  const int n = sys.functions();
  const int N = sys.atoms();
  const FiniteNormedSpace& X = T.domain;
  if (T.matrix.norm() == 0.0) return zeroReport("modified-type-zero-operator");
  const ScalarField field = combineFields(sys, T);

  // numerator: ell of the coefficient family C(F) = B (F K), K = diag(p) Phi^H
  const Matrix K = sys.space.weights.asDiagonal() * sys.values.adjoint();  // N x n
  QuadMean inner;
  if (T.codomain.isHilbert()) {
    inner = QuadMean{Matrix::Identity(n, n), RealVector::Ones(n), T.matrix, T.codomain};
  } else {
    inner = streamQuad(n, budget, field, T.matrix, T.codomain);
  }

  AscentProblem problem;
  auto denValue = [&](const Matrix& f) {
    double acc = 0;
    for (int j = 0; j < N; ++j) {
      double nv = norm(f.col(j), X);
      acc += sys.space.weights(j) * nv * nv;
    }
    return std::sqrt(acc);
  };
  problem.value = [&](const Matrix& f) {
    double d = denValue(f);
    return d == 0.0 ? 0.0 : inner.value(f * K) / d;
  };
  problem.gradient = [&](const Matrix& f) {
    double d = denValue(f);
    if (d == 0.0) return Matrix::Zero(f.rows(), f.cols()).eval();
    Matrix m = f * K;
    double numv = inner.value(m);
    Matrix gnum = inner.gradient(m) * K.adjoint();
    Matrix gden = Matrix::Zero(f.rows(), f.cols());
    for (int j = 0; j < N; ++j) {
      Vector y = f.col(j);
      double nv = norm(y, X);
      if (nv == 0.0) continue;
      gden.col(j) = sys.space.weights(j) * nv / d * normGradient(y, X);
    }
    return ((gnum * d - numv * gden) / (d * d)).eval();
  };
  problem.project = normalizeFrobenius;

  auto start = [&](int r) -> Matrix {
    if (r == 0) return canonicalFamily(X.dim, n) * sys.values;  // embedded coordinate family
    Rng rng(deriveSeed(budget.policy.masterSeed, 0xF00ULL + static_cast<std::uint64_t>(r)));
    return rng.gaussianMatrix(X.dim, N, field);
  };

  EstimateReport rep = maximizeWithRestarts(problem, start, budget, "modified-type-ascent");
  rep.witness = normalizeFrobenius(rep.witness);
  rep.value = modifiedTypeRatioAt(sys, T, rep.witness, budget.policy);
  return rep;
}

EstimateReport c2n(const LinearMap& T, int n, const OptBudget& budget, int familyFactor) {
  const ScalarField field = combineFields(canonicalUnitSystem(1), T);
  EstimateReport rep =
      cotypeConst(canonicalUnitSystem(n * std::max(1, familyFactor), field), T, budget);
  rep.method = "c2n-ascent";
  return rep;
}

EstimateReport t2n(const LinearMap& T, int n, const OptBudget& budget, int familyFactor) {
  const ScalarField field = combineFields(canonicalUnitSystem(1), T);
  EstimateReport rep =
      typeConst(canonicalUnitSystem(n * std::max(1, familyFactor), field), T, budget);
  rep.method = "t2n-ascent";
  return rep;
}

}  // namespace onslab
