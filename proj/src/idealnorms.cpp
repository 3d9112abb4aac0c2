#include "onslab/idealnorms.hpp"

#include <algorithm>
#include <cmath>

namespace onslab {

namespace {

ScalarField combineFields(std::initializer_list<ScalarField> fields) {
  for (auto f : fields)
    if (f == ScalarField::Complex) return ScalarField::Complex;
  return ScalarField::Real;
}

// Shared evaluation state for Phi(T u) as a function of u's matrix.
struct PhiObjective {
  const OrthonormalSystem& sys;
  Matrix b;                 // T's matrix (identity allowed)
  FiniteNormedSpace cod;    // T's codomain

  double value(const Matrix& u) const {
    double s = 0;
    for (int j = 0; j < sys.atoms(); ++j) {
      Vector y = b * (u * sys.values.col(j));
      double nv = norm(y, cod);
      s += sys.space.weights(j) * nv * nv;
    }
    return std::sqrt(s);
  }

  Matrix gradient(const Matrix& u) const {
    const double f = value(u);
    Matrix g = Matrix::Zero(u.rows(), u.cols());
    if (f == 0.0) return g;
    for (int j = 0; j < sys.atoms(); ++j) {
      Vector fj = sys.values.col(j);
      Vector y = b * (u * fj);
      double nv = norm(y, cod);
      if (nv == 0.0) continue;
      Vector gy = normGradient(y, cod);
      g.noalias() += sys.space.weights(j) * nv * (b.adjoint() * gy) * fj.adjoint();
    }
    return g / f;
  }
};

Matrix clipSingularValues(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  RealVector s = svd.singularValues();
  bool touched = false;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > 1.0) {
      s(i) = 1.0;
      touched = true;
    }
  if (!touched) return m;
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
}

Matrix scaleRows(const Matrix& m, const FiniteNormedSpace& X, bool forward) {
  if (!X.weights) return m;
  Matrix out = m;
  for (int i = 0; i < X.dim; ++i) {
    double s = std::sqrt((*X.weights)(i));
    out.row(i) *= forward ? s : 1.0 / s;
  }
  return out;
}

Matrix identityEmbedding(int rows, int cols) {
  Matrix u = Matrix::Zero(rows, cols);
  const int k = std::min(rows, cols);
  for (int i = 0; i < k; ++i) u(i, i) = 1.0;
  return u;
}

Matrix haarPartialIsometry(int rows, int cols, Rng& rng, ScalarField field) {
  const int k = std::min(rows, cols);
  Matrix left = haarMatrix(rows, rng, field).leftCols(k);
  Matrix right = haarMatrix(cols, rng, field).leftCols(k);
  return left * right.adjoint();
}

}  // namespace

OrthonormalSystem canonicalUnitSystem(int n, ScalarField field) {
  OrthonormalSystem sys;
  sys.space = MeasureSpace::unit(n);
  sys.field = field;
  sys.values = Matrix::Identity(n, n);
  return sys;
}

double phiNorm(const OrthonormalSystem& sys, const LinearMap& u) {
  if (u.domain.exponent != 2.0) throw Error("phiNorm: u must act from ell_2^n");
  if (u.domain.dim != sys.functions())
    throw DimensionMismatch("phiNorm: u domain must match system length");
  double s = 0;
  for (int j = 0; j < sys.atoms(); ++j) {
    double nv = norm(u.matrix * sys.values.col(j), u.codomain);
    s += sys.space.weights(j) * nv * nv;
  }
  return std::sqrt(s);
}

double rowNormUpperBound(const Matrix& u, const FiniteNormedSpace& X) {
  Vector rowNorms(X.dim);
  for (int i = 0; i < X.dim; ++i) rowNorms(i) = u.row(i).norm();
  return norm(rowNorms, X);
}

EstimateReport piPhi(const OrthonormalSystem& sys, const LinearMap& T,
                     const OptBudget& budget) {
  const int n = sys.functions();
  const FiniteNormedSpace& X = T.domain;
  const int m = X.dim;
  if (T.matrix.cols() != m) throw DimensionMismatch("piPhi: T shape");
  const ScalarField field =
      combineFields({sys.field, X.field, T.codomain.field});
  PhiObjective obj{sys, T.matrix, T.codomain};

  AscentProblem problem;
  const bool hilbertBall = X.exponent == 2.0;
  const bool rowBall = X.exponent == kInf;

  if (hilbertBall || rowBall) {
    problem.value = [obj](const Matrix& u) { return obj.value(u); };
    problem.gradient = [obj](const Matrix& u) { return obj.gradient(u); };
    if (hilbertBall) {
      problem.project = [&X](const Matrix& u) {
        return scaleRows(clipSingularValues(scaleRows(u, X, true)), X, false);
      };
    } else {
      problem.project = [&X](const Matrix& u) {
        Matrix out = u;
        for (int i = 0; i < X.dim; ++i) {
          double nv = X.weightAt(i) * out.row(i).norm();
          if (nv > 1.0) out.row(i) /= nv;
        }
        return out;
      };
    }
  } else {
    // ratio mode: Phi(Tu) / ub(u) with a certified upper bound of ||u||,
    // re-scaled to the boundary at the end
    problem.value = [obj, &X](const Matrix& u) {
      double ub = rowNormUpperBound(u, X);
      return ub == 0.0 ? 0.0 : obj.value(u) / ub;
    };
    problem.gradient = [obj, &X](const Matrix& u) {
      double ub = rowNormUpperBound(u, X);
      if (ub == 0.0) return Matrix::Zero(u.rows(), u.cols()).eval();
      double num = obj.value(u);
      Matrix gnum = obj.gradient(u);
      Vector rowNorms(X.dim);
      for (int i = 0; i < X.dim; ++i) rowNorms(i) = u.row(i).norm();
      Vector gx = normGradient(rowNorms, X);
      Matrix gub = Matrix::Zero(u.rows(), u.cols());
      for (int i = 0; i < X.dim; ++i) {
        double rn = std::abs(rowNorms(i));
        if (rn > 0) gub.row(i) = gx(i).real() / rn * u.row(i);
      }
      return ((gnum * ub - num * gub) / (ub * ub)).eval();
    };
    problem.project = [](const Matrix& u) {
      double f = u.norm();
      return f == 0.0 ? u : (u / f).eval();
    };
  }

  auto start = [&](int r) -> Matrix {
    if (r == 0) return identityEmbedding(m, n);
    Rng rng(deriveSeed(budget.policy.masterSeed, static_cast<std::uint64_t>(r)));
    if (hilbertBall || rowBall) {
      Matrix u = haarPartialIsometry(m, n, rng, field);
      return u;
    }
    return rng.gaussianMatrix(m, n, field);
  };

  EstimateReport rep = maximizeWithRestarts(problem, start, budget, "pi-phi-ascent");
  if (!(hilbertBall || rowBall)) {
    double ub = rowNormUpperBound(rep.witness, X);
    if (ub > 0) rep.witness /= ub;
    rep.value = obj.value(rep.witness);
  } else {
    rep.witness = problem.project(rep.witness);
    rep.value = obj.value(rep.witness);
  }
  return rep;
}

EstimateReport pi2n(const LinearMap& T, int n, const OptBudget& budget) {
  if (T.domain.isHilbert() && T.codomain.isHilbert()) {
    Eigen::JacobiSVD<Matrix> svd(hilbertScaledMatrix(T), Eigen::ComputeThinV);
    RealVector s = svd.singularValues();
    const int k = std::min<int>(n, static_cast<int>(s.size()));
    double acc = 0;
    for (int i = 0; i < k; ++i) acc += s(i) * s(i);
    EstimateReport rep;
    rep.value = std::sqrt(acc);
    rep.direction = Direction::Exact;
    rep.method = "pi2n-singular-values";
    Matrix v = svd.matrixV().leftCols(k);
    Matrix w = Matrix::Zero(T.domain.dim, n);
    w.leftCols(k) = scaleRows(v, T.domain, false);
    rep.witness = w;
    return rep;
  }
  const ScalarField field = combineFields({T.domain.field, T.codomain.field});
  return piPhi(canonicalUnitSystem(n, field), T, budget);
}

FamilyNormWitness familyMapNorm(const Matrix& family, const FiniteNormedSpace& X,
                                int innerRestarts, std::uint64_t seed) {
  const int n = static_cast<int>(family.cols());
  FamilyNormWitness out;
  if (X.exponent == 2.0) {
    Eigen::JacobiSVD<Matrix> svd(scaleRows(family, X, true), Eigen::ComputeThinV);
    out.value = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    out.direction = svd.matrixV().col(0);
    out.exact = true;
    return out;
  }
  if (X.exponent == kInf) {
    int arg = 0;
    double best = -1;
    for (int i = 0; i < X.dim; ++i) {
      double v = X.weightAt(i) * family.row(i).norm();
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    out.value = best;
    Vector row = family.row(arg).transpose();
    double rn = row.norm();
    out.direction = rn == 0 ? Vector::Unit(n, 0).eval() : (row.conjugate() / rn).eval();
    out.exact = true;
    return out;
  }
  if (X.exponent == 1.0 && X.field == ScalarField::Real && family.imag().norm() == 0.0 &&
      X.dim <= 20) {
    // dual ball of L_1(w) has extreme points D_w eps, eps in {-1,1}^m
    const int m = X.dim;
    const std::int64_t patterns = m == 1 ? 1 : (1LL << (m - 1));
    RealMatrix f = family.real();
    RealVector w = X.weights ? *X.weights : RealVector::Ones(m);
    double best = -1;
    RealVector bestA;
    RealVector eps(m);
    for (std::int64_t mask = 0; mask < patterns; ++mask) {
      eps(0) = w(0);
      for (int i = 1; i < m; ++i) eps(i) = ((mask >> (i - 1)) & 1 ? 1.0 : -1.0) * w(i);
      double v = (f.transpose() * eps).norm();
      if (v > best) {
        best = v;
        bestA = eps;
      }
    }
    out.value = best;
    Vector c = (f.transpose() * bestA).cast<Complex>();
    double cn = c.norm();
    out.direction = cn == 0 ? Vector::Unit(n, 0).eval() : (c / cn).eval();
    out.exact = true;
    return out;
  }

  // generic: ascent of ||S c||_X over the euclidean sphere
  const ScalarField field =
      family.imag().norm() == 0.0 && X.field == ScalarField::Real ? ScalarField::Real
                                                                  : ScalarField::Complex;
  double best = -1;
  Vector bestC;
  for (int r = 0; r < std::max(1, innerRestarts); ++r) {
    Rng rng(deriveSeed(seed, 0x77ULL + static_cast<std::uint64_t>(r)));
    Vector c = r == 0 ? Vector(Vector::Ones(n) / std::sqrt(double(n)))
                      : rng.gaussianVector(n, field).normalized();
    double f = norm(family * c, X);
    double step = 1.0;
    for (int it = 0; it < 100; ++it) {
      Vector y = family * c;
      Vector g = family.adjoint() * normGradient(y, X) - f * c;
      double gn2 = g.squaredNorm();
      if (gn2 < 1e-28) break;
      bool ok = false;
      for (int bt = 0; bt < 30; ++bt) {
        Vector cand = (c + step * g).normalized();
        double fc = norm(family * cand, X);
        if (fc > f + 1e-4 * step * gn2) {
          c = cand;
          f = fc;
          step *= 2;
          ok = true;
          break;
        }
        step *= 0.5;
      }
      if (!ok) break;
    }
    if (f > best) {
      best = f;
      bestC = c;
    }
  }
  out.value = best;
  out.direction = bestC;
  out.exact = false;
  return out;
}

double weakL2Norm(const Matrix& family, const FiniteNormedSpace& X, int innerRestarts,
                  std::uint64_t seed) {
  return familyMapNorm(family, X, innerRestarts, seed).value;
}

EstimateReport equalNormPi2n(const LinearMap& T, int n, const OptBudget& budget) {
  const FiniteNormedSpace& X = T.domain;
  const int m = X.dim;
  const Matrix& B = T.matrix;
  const ScalarField field = combineFields({X.field, T.codomain.field});
  if (B.norm() == 0.0) throw AllZeroImages("equalNormPi2n: T = 0");

  auto project = [&](const Matrix& s) -> Matrix {
    Matrix out = s;
    // keep every column off the kernel, then equalize image norms along rays
    RealVector t(n);
    double tmax = 0;
    for (int i = 0; i < n; ++i) {
      t(i) = norm(B * out.col(i), T.codomain);
      tmax = std::max(tmax, t(i));
    }
    if (tmax == 0.0) {
      out = identityEmbedding(m, n);
      for (int i = 0; i < n; ++i) t(i) = norm(B * out.col(i), T.codomain);
      tmax = t.maxCoeff();
    }
    for (int i = 0; i < n; ++i) {
      if (t(i) < 1e-12 * tmax) {
        Eigen::JacobiSVD<Matrix> svd(B, Eigen::ComputeThinV);
        out.col(i) = svd.matrixV().col(0) * tmax;
        t(i) = norm(B * out.col(i), T.codomain);
      }
    }
    double logmean = 0;
    for (int i = 0; i < n; ++i) logmean += std::log(t(i));
    const double target = std::exp(logmean / n);
    for (int i = 0; i < n; ++i) out.col(i) *= target / t(i);
    double den = weakL2Norm(out, X, budget.innerRestarts, budget.policy.masterSeed);
    if (den > 0) out /= den;
    return out;
  };

  auto numerator = [&](const Matrix& s) {
    double acc = 0;
    for (int i = 0; i < n; ++i) {
      double nv = norm(B * s.col(i), T.codomain);
      acc += nv * nv;
    }
    return std::sqrt(acc);
  };

  AscentProblem problem;
  problem.project = project;
  problem.value = [&, numerator](const Matrix& s) {
    double den = weakL2Norm(s, X, budget.innerRestarts, budget.policy.masterSeed);
    return den == 0.0 ? 0.0 : numerator(s) / den;
  };
  problem.gradient = [&, numerator](const Matrix& s) {
    const double num = numerator(s);
    FamilyNormWitness den = familyMapNorm(s, X, budget.innerRestarts, budget.policy.masterSeed);
    Matrix gnum = Matrix::Zero(m, n);
    for (int i = 0; i < n; ++i) {
      Vector y = B * s.col(i);
      double nv = norm(y, T.codomain);
      if (nv == 0) continue;
      gnum.col(i) = nv / num * (B.adjoint() * normGradient(y, T.codomain));
    }
    Matrix gden = Matrix::Zero(m, n);
    if (den.value > 0 && den.direction.size() == n) {
      Vector y = s * den.direction;
      gden = normGradient(y, X) * den.direction.adjoint();
    }
    double d = std::max(den.value, 1e-30);
    return ((gnum * d - num * gden) / (d * d)).eval();
  };

  auto start = [&](int r) -> Matrix {
    if (r == 0) return identityEmbedding(m, n);
    Rng rng(deriveSeed(budget.policy.masterSeed, 0xE0ULL + static_cast<std::uint64_t>(r)));
    return rng.gaussianMatrix(m, n, field);
  };

  EstimateReport rep = maximizeWithRestarts(problem, start, budget, "equal-norm-pi2n");
  rep.witness = project(rep.witness);
  double den = weakL2Norm(rep.witness, X, budget.innerRestarts, budget.policy.masterSeed);
  rep.value = den == 0.0 ? 0.0 : numerator(rep.witness) / den;
  return rep;
}

EstimateReport phiDual(const OrthonormalSystem& sys, const LinearMap& v,
                       const OptBudget& budget) {
  const int n = sys.functions();
  if (v.codomain.dim != n || v.codomain.exponent != 2.0 || v.codomain.weights)
    throw DimensionMismatch("phiDual: v must map into plain ell_2^n");
  const FiniteNormedSpace& X = v.domain;
  const Matrix& V = v.matrix;

  if (X.exponent == 2.0) {
    Matrix scaled = V;
    if (X.weights)
      for (int j = 0; j < X.dim; ++j) scaled.col(j) /= std::sqrt((*X.weights)(j));
    EstimateReport rep;
    rep.value = scaled.norm();
    rep.direction = Direction::Exact;
    rep.method = "phi-dual-hilbert";
    if (rep.value > 0) {
      Matrix w = V.adjoint();
      if (X.weights)
        for (int i = 0; i < X.dim; ++i) w.row(i) /= (*X.weights)(i);
      rep.witness = w / rep.value;
    }
    return rep;
  }

  PhiObjective phi{sys, Matrix::Identity(X.dim, X.dim), X};
  AscentProblem problem;
  problem.value = [&](const Matrix& u) {
    double d = phi.value(u);
    return d == 0.0 ? 0.0 : std::abs((V * u).trace()) / d;
  };
  problem.gradient = [&](const Matrix& u) {
    double den = phi.value(u);
    if (den == 0.0) return Matrix::Zero(u.rows(), u.cols()).eval();
    Complex t = (V * u).trace();
    double num = std::abs(t);
    Complex ph = num == 0.0 ? Complex(1, 0) : t / num;
    Matrix gnum = ph * V.adjoint();
    Matrix gden = phi.gradient(u);
    return ((gnum * den - num * gden) / (den * den)).eval();
  };
  problem.project = [](const Matrix& u) {
    double f = u.norm();
    return f == 0.0 ? u : (u / f).eval();
  };
  const ScalarField field = combineFields({sys.field, X.field});
  auto start = [&](int r) -> Matrix {
    if (r == 0) return V.adjoint();
    Rng rng(deriveSeed(budget.policy.masterSeed, 0xD0ULL + static_cast<std::uint64_t>(r)));
    return rng.gaussianMatrix(X.dim, n, field);
  };
  EstimateReport rep = maximizeWithRestarts(problem, start, budget, "phi-dual-ascent");
  double d = phi.value(rep.witness);
  if (d > 0) {
    rep.witness /= d;
    rep.value = std::abs((V * rep.witness).trace());
  }
  return rep;
}

double nuclearNormHilbert(const LinearMap& v) {
  if (!v.domain.isHilbert() || !v.codomain.isHilbert())
    throw NonHilbert("nuclearNormHilbert: both spaces must carry exponent 2");
  Eigen::JacobiSVD<Matrix> svd(hilbertScaledMatrix(v));
  return svd.singularValues().sum();
}

double reevaluatePiPhi(const OrthonormalSystem& sys, const LinearMap& T,
                       const Matrix& witness, double tol) {
  const FiniteNormedSpace& X = T.domain;
  double opnorm;
  if (X.exponent == 2.0) {
    Eigen::JacobiSVD<Matrix> svd(scaleRows(witness, X, true));
    opnorm = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  } else if (X.exponent == kInf) {
    opnorm = 0;
    for (int i = 0; i < X.dim; ++i)
      opnorm = std::max(opnorm, X.weightAt(i) * witness.row(i).norm());
  } else {
    opnorm = rowNormUpperBound(witness, X);
  }
  if (opnorm > 1.0 + tol) throw Error("reevaluatePiPhi: witness is not a contraction");
  LinearMap u{FiniteNormedSpace::lp(static_cast<int>(witness.cols()), 2.0, X.field), X, witness};
  return phiNorm(sys, compose(T, u));
}

}  // namespace onslab
