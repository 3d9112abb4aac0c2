#include "onslab/core.hpp"

#include "onslab/rng.hpp"

#include <algorithm>
#include <cmath>

namespace onslab {

MeasureSpace::MeasureSpace(RealVector w) : weights(std::move(w)) {
  if (weights.size() < 1) throw Error("measure space needs at least one atom");
  for (int j = 0; j < weights.size(); ++j)
    if (!(weights(j) > 0.0)) throw Error("atom masses must be strictly positive");
}

MeasureSpace MeasureSpace::uniform(int atoms) {
  return MeasureSpace(RealVector::Constant(atoms, 1.0 / atoms));
}

MeasureSpace MeasureSpace::unit(int atoms) {
  return MeasureSpace(RealVector::Ones(atoms));
}

Complex innerProduct(const Vector& f, const Vector& g, const MeasureSpace& space) {
  if (f.size() != space.atoms() || g.size() != space.atoms())
    throw DimensionMismatch("innerProduct: length mismatch");
  Complex acc(0, 0);
  for (int j = 0; j < f.size(); ++j) acc += space.weights(j) * f(j) * std::conj(g(j));
  return acc;
}

double gramDeviation(const Matrix& values, const MeasureSpace& space) {
  const int n = static_cast<int>(values.rows());
  Matrix scaled = values * space.weights.asDiagonal();
  Matrix gram = scaled * values.adjoint();  // (k,l) = sum_j p_j phi_k conj(phi_l)
  double dev = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      double d = std::abs(gram(k, l) - (k == l ? Complex(1, 0) : Complex(0, 0)));
      dev = std::max(dev, d);
    }
  return dev;
}

OrthonormalSystem validateSystem(Matrix values, MeasureSpace space, double orthoTol,
                                 ScalarField field) {
  const int n = static_cast<int>(values.rows());
  const int N = space.atoms();
  if (values.cols() != N) throw DimensionMismatch("validateSystem: values/space mismatch");
  if (n > N) throw Error("validateSystem: more functions than atoms");
  Matrix scaled = values * space.weights.asDiagonal();
  Matrix gram = scaled * values.adjoint();
  int worstK = 0, worstL = 0;
  double worst = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      double d = std::abs(gram(k, l) - (k == l ? Complex(1, 0) : Complex(0, 0)));
      if (d > worst) {
        worst = d;
        worstK = k;
        worstL = l;
      }
    }
  if (worst > orthoTol) throw GramViolation(worstK, worstL, worst);
  return OrthonormalSystem{std::move(space), field, std::move(values)};
}

OrthonormalSystem gramSchmidt(Matrix values, MeasureSpace space, ScalarField field,
                              double rankTol) {
  const int n = static_cast<int>(values.rows());
  if (values.cols() != space.atoms()) throw DimensionMismatch("gramSchmidt: values/space mismatch");
  if (n > space.atoms()) throw Error("gramSchmidt: more rows than atoms");
  Matrix out = values;
  for (int k = 0; k < n; ++k) {
    Vector row = out.row(k).transpose();
    const double original = std::sqrt(std::abs(innerProduct(row, row, space)));
    // two orthogonalization passes
    for (int pass = 0; pass < 2; ++pass) {
      for (int l = 0; l < k; ++l) {
        Vector prev = out.row(l).transpose();
        row -= innerProduct(row, prev, space) * prev;
      }
    }
    const double residual = std::sqrt(std::abs(innerProduct(row, row, space)));
    if (original == 0.0 || residual <= rankTol * std::max(1.0, original))
      throw RankDeficient("gramSchmidt: row " + std::to_string(k) + " is dependent");
    out.row(k) = (row / residual).transpose();
  }
  return validateSystem(std::move(out), std::move(space), kDefaultOrthoTol, field);
}

FiniteNormedSpace FiniteNormedSpace::lp(int dim, double p, ScalarField field) {
  if (dim < 1 || !(p >= 1.0)) throw Error("lp: bad parameters");
  return FiniteNormedSpace{dim, p, std::nullopt, field};
}

FiniteNormedSpace FiniteNormedSpace::lpUniform(int dim, double p, ScalarField field) {
  if (p == kInf) return lp(dim, p, field);
  return weighted(dim, p, RealVector::Constant(dim, 1.0 / dim), field);
}

FiniteNormedSpace FiniteNormedSpace::weighted(int dim, double p, RealVector w,
                                              ScalarField field) {
  if (dim < 1 || !(p >= 1.0)) throw Error("weighted: bad parameters");
  if (w.size() != dim) throw DimensionMismatch("weighted: weight length");
  for (int j = 0; j < dim; ++j)
    if (!(w(j) > 0.0)) throw Error("weighted: weights must be positive");
  return FiniteNormedSpace{dim, p, std::move(w), field};
}

double norm(const Vector& x, const FiniteNormedSpace& X) {
  if (x.size() != X.dim) throw DimensionMismatch("norm: length mismatch");
  const double p = X.exponent;
  if (p == kInf) {
    double m = 0.0;
    for (int i = 0; i < X.dim; ++i) m = std::max(m, X.weightAt(i) * std::abs(x(i)));
    return m;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (int i = 0; i < X.dim; ++i) s += X.weightAt(i) * std::norm(x(i));
    return std::sqrt(s);
  }
  if (p == 1.0) {
    double s = 0.0;
    for (int i = 0; i < X.dim; ++i) s += X.weightAt(i) * std::abs(x(i));
    return s;
  }
  double s = 0.0;
  for (int i = 0; i < X.dim; ++i) s += X.weightAt(i) * std::pow(std::abs(x(i)), p);
  return std::pow(s, 1.0 / p);
}

FiniteNormedSpace dualSpace(const FiniteNormedSpace& X) {
  FiniteNormedSpace dual;
  dual.dim = X.dim;
  dual.field = X.field;
  const double p = X.exponent;
  if (p == kInf) {
    dual.exponent = 1.0;
  } else if (p == 1.0) {
    dual.exponent = kInf;
  } else {
    dual.exponent = p / (p - 1.0);
  }
  if (X.weights) {
    RealVector w(X.dim);
    if (p == kInf || p == 1.0) {
      w = X.weights->cwiseInverse();
    } else {
      const double q = dual.exponent;
      for (int i = 0; i < X.dim; ++i) w(i) = std::pow((*X.weights)(i), 1.0 - q);
    }
    dual.weights = std::move(w);
  }
  return dual;
}

namespace {
inline Complex phase(Complex z) {
  double a = std::abs(z);
  return a == 0.0 ? Complex(0, 0) : z / a;
}
}  // namespace

Vector normGradient(const Vector& x, const FiniteNormedSpace& X) {
  const double p = X.exponent;
  Vector g = Vector::Zero(X.dim);
  if (p == kInf) {
    int best = 0;
    double m = -1.0;
    for (int i = 0; i < X.dim; ++i) {
      double v = X.weightAt(i) * std::abs(x(i));
      if (v > m) {
        m = v;
        best = i;
      }
    }
    g(best) = X.weightAt(best) * phase(x(best));
    return g;
  }
  if (p == 1.0) {
    for (int i = 0; i < X.dim; ++i) g(i) = X.weightAt(i) * phase(x(i));
    return g;
  }
  const double nrm = norm(x, X);
  if (nrm == 0.0) return g;
  for (int i = 0; i < X.dim; ++i) {
    double a = std::abs(x(i));
    if (a == 0.0) continue;
    g(i) = X.weightAt(i) * std::pow(a, p - 1.0) * phase(x(i)) / std::pow(nrm, p - 1.0);
  }
  return g;
}

LinearMap LinearMap::identity(const FiniteNormedSpace& X) {
  return LinearMap{X, X, Matrix::Identity(X.dim, X.dim)};
}

LinearMap LinearMap::formalIdentity(FiniteNormedSpace from, FiniteNormedSpace to) {
  if (from.dim != to.dim) throw DimensionMismatch("formalIdentity: dimensions differ");
  const int d = from.dim;
  return LinearMap{std::move(from), std::move(to), Matrix::Identity(d, d)};
}

LinearMap compose(const LinearMap& u, const LinearMap& v) {
  if (u.domain.dim != v.codomain.dim) throw DimensionMismatch("compose: shape mismatch");
  return LinearMap{v.domain, u.codomain, u.matrix * v.matrix};
}

LinearMap adjoint(const LinearMap& u) {
  return LinearMap{dualSpace(u.codomain), dualSpace(u.domain), u.matrix.adjoint()};
}

Matrix hilbertScaledMatrix(const LinearMap& u) {
  Matrix s = u.matrix;
  if (u.codomain.weights) {
    for (int i = 0; i < u.codomain.dim; ++i) s.row(i) *= std::sqrt((*u.codomain.weights)(i));
  }
  if (u.domain.weights) {
    for (int j = 0; j < u.domain.dim; ++j) s.col(j) /= std::sqrt((*u.domain.weights)(j));
  }
  return s;
}

double hilbertSchmidtNorm(const LinearMap& u) { return hilbertScaledMatrix(u).norm(); }

namespace {

// Unit vector of X along the direction of x (any nonzero x).
Vector normalizeIn(const Vector& x, const FiniteNormedSpace& X) {
  double n = norm(x, X);
  return x / n;
}

double rayleigh(const LinearMap& u, const Vector& x) {
  return norm(u.matrix * x, u.codomain) / norm(x, u.domain);
}

EstimateReport gridBracketDim2(const LinearMap& u, double best) {
  // 1e4-point sweep of the domain sphere; 2% oracle slack on top.
  const bool cplx = u.domain.field == ScalarField::Complex ||
                    u.codomain.field == ScalarField::Complex;
  double m = best;
  if (u.domain.dim == 1) {
    m = std::max(m, rayleigh(u, Vector::Ones(1)));
  } else if (!cplx) {
    const int K = 10000;
    for (int t = 0; t < K; ++t) {
      double th = M_PI * t / K;
      Vector x(2);
      x << std::cos(th), std::sin(th);
      m = std::max(m, rayleigh(u, x));
    }
  } else {
    const int K = 100;
    for (int a = 0; a <= K / 2; ++a)
      for (int b = 0; b < K; ++b) {
        double th = M_PI * a / K, ps = 2 * M_PI * b / K;
        Vector x(2);
        x << Complex(std::cos(th), 0), std::polar(std::sin(th), ps);
        m = std::max(m, rayleigh(u, x));
      }
  }
  EstimateReport rep;
  rep.value = m;
  rep.direction = Direction::Bracket;
  rep.lo = m;
  rep.hi = m * 1.02;
  rep.method = "operator-norm-grid";
  return rep;
}

}  // namespace

EstimateReport operatorNormLowerBound(const LinearMap& u, int restarts, int maxIterations,
                                      std::uint64_t seed) {
  const bool cplx = u.domain.field == ScalarField::Complex ||
                    u.codomain.field == ScalarField::Complex;
  const ScalarField field = cplx ? ScalarField::Complex : ScalarField::Real;
  EstimateReport best;
  best.value = -1.0;
  for (int r = 0; r < restarts; ++r) {
    Vector x;
    if (r == 0) {
      // top right singular vector of the Hilbert-scaled matrix
      Eigen::JacobiSVD<Matrix> svd(hilbertScaledMatrix(u), Eigen::ComputeThinV);
      x = svd.matrixV().col(0);
      if (u.domain.weights)
        for (int j = 0; j < u.domain.dim; ++j) x(j) /= std::sqrt((*u.domain.weights)(j));
    } else {
      Rng rng(deriveSeed(seed, static_cast<std::uint64_t>(r)));
      x = rng.gaussianVector(u.domain.dim, field);
    }
    if (norm(x, u.domain) == 0.0) continue;
    x = normalizeIn(x, u.domain);
    double f = norm(u.matrix * x, u.codomain);
    double step = 1.0;
    int it = 0;
    for (; it < maxIterations; ++it) {
      Vector y = u.matrix * x;
      Vector gy = normGradient(y, u.codomain);
      Vector gx = normGradient(x, u.domain);
      // gradient of the ratio |ux| / |x| at |x| = 1
      Vector g = u.matrix.adjoint() * gy - f * gx;
      double gn2 = g.squaredNorm();
      if (gn2 < 1e-30) break;
      bool accepted = false;
      for (int bt = 0; bt < 40; ++bt) {
        Vector cand = x + step * g;
        double cn = norm(cand, u.domain);
        if (cn > 0) {
          cand /= cn;
          double fc = norm(u.matrix * cand, u.codomain);
          if (fc > f + 1e-4 * step * gn2) {
            x = cand;
            f = fc;
            step *= 2.0;
            accepted = true;
            break;
          }
        }
        step *= 0.5;
      }
      if (!accepted) break;
    }
    if (f > best.value) {
      best.value = f;
      best.witness = x;
      best.iterations = it;
    }
  }
  best.direction = Direction::Lower;
  best.method = "operator-norm-ascent";
  best.seed = seed;
  best.restarts = restarts;
  return best;
}

EstimateReport operatorNorm(const LinearMap& u) {
  const double pd = u.domain.exponent, pc = u.codomain.exponent;
  EstimateReport rep;
  rep.method = "operator-norm-exact";

  if (pd == 2.0 && pc == 2.0) {
    Eigen::JacobiSVD<Matrix> svd(hilbertScaledMatrix(u), Eigen::ComputeThinV);
    rep.value = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    Vector x = svd.matrixV().col(0);
    if (u.domain.weights)
      for (int j = 0; j < u.domain.dim; ++j) x(j) /= std::sqrt((*u.domain.weights)(j));
    rep.witness = x;
    return rep;
  }
  if (u.domain.dim == 1) {
    Vector e1 = Vector::Ones(1);
    rep.value = norm(u.matrix.col(0), u.codomain) / norm(e1, u.domain);
    rep.witness = e1;
    return rep;
  }
  if (pd == 1.0) {
    // unit ball of L_1(w) is absconv{ e_j / w_j }
    double m = 0.0;
    int arg = 0;
    for (int j = 0; j < u.domain.dim; ++j) {
      double v = norm(u.matrix.col(j), u.codomain) / u.domain.weightAt(j);
      if (v > m) {
        m = v;
        arg = j;
      }
    }
    rep.value = m;
    Vector x = Vector::Zero(u.domain.dim);
    x(arg) = 1.0 / u.domain.weightAt(arg);
    rep.witness = x;
    return rep;
  }
  if (pc == kInf) {
    // row-wise dual norms
    FiniteNormedSpace dual = dualSpace(u.domain);
    double m = 0.0;
    for (int i = 0; i < u.codomain.dim; ++i) {
      Vector row = u.matrix.row(i).transpose();
      m = std::max(m, u.codomain.weightAt(i) * norm(row, dual));
    }
    rep.value = m;
    return rep;
  }

  EstimateReport iter = operatorNormLowerBound(u, 16, 200, 0x6f6e736cULL);
  if (u.domain.dim <= 2) {
    EstimateReport grid = gridBracketDim2(u, iter.value);
    grid.witness = iter.witness;
    grid.seed = iter.seed;
    grid.restarts = iter.restarts;
    grid.iterations = iter.iterations;
    return grid;
  }
  return iter;
}

}  // namespace onslab
