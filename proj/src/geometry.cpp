#include "onslab/geometry.hpp"

#include "simplex.hpp"

#include <algorithm>
#include <cmath>

namespace onslab {

namespace {

// Unweighted isometric copy: row k is (sqrt(p_j) phi_k(omega_j))_j.
Matrix unweightedCopy(const OrthonormalSystem& sys) {
  Matrix m = sys.values;
  for (int j = 0; j < sys.atoms(); ++j) m.col(j) *= std::sqrt(sys.space.weights(j));
  return m;
}

Matrix polarUnitary(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// sum_j p_j max_l |rows(l, j)|^2 and the atom-wise argmax (ties to the
// smallest index).
double supIntegral(const Matrix& rows, const RealVector& weights, std::vector<int>* argmax) {
  double acc = 0;
  if (argmax) argmax->assign(static_cast<std::size_t>(rows.cols()), 0);
  for (int j = 0; j < rows.cols(); ++j) {
    double best = -1;
    int arg = 0;
    for (int l = 0; l < rows.rows(); ++l) {
      double v = std::norm(rows(l, j));
      if (v > best) {
        best = v;
        arg = l;
      }
    }
    acc += weights(j) * best;
    if (argmax) (*argmax)[static_cast<std::size_t>(j)] = arg;
  }
  return acc;
}

}  // namespace

GreedyBasisResult greedyCoordinateBasis(const Matrix& orthonormalRows, int N) {
  const int n = static_cast<int>(orthonormalRows.rows());
  if (orthonormalRows.cols() != N) throw DimensionMismatch("greedyCoordinateBasis: width");
  if (n > N) throw Error("greedyCoordinateBasis: dim H exceeds N");

  Matrix deflated = orthonormalRows;  // orthonormal rows of the current H^k
  GreedyBasisResult result;
  result.certified = (n + 2) / 3;
  Matrix basis(n, N);
  std::vector<bool> used(static_cast<std::size_t>(N), false);
  int produced = 0;

  while (produced < n && deflated.rows() > 0) {
    // leverage scores of the unused atoms
    int pick = -1;
    double best = 0;
    for (int j = 0; j < N; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      double lev = deflated.col(j).squaredNorm();
      if (lev > best) {
        best = lev;
        pick = j;
      }
    }
    if (pick < 0 || best < 1e-13) {
      if (produced < result.certified)
        throw RankDeficient("greedyCoordinateBasis: leverage collapsed before the certified steps");
      break;
    }
    Vector v = deflated.col(pick).conjugate();  // coefficients of P e_pick
    Vector h = deflated.transpose() * v;
    const double lev = v.squaredNorm();
    basis.row(produced) = (h / std::sqrt(lev)).transpose();
    result.indices.push_back(pick);
    result.guarantees.push_back(std::norm(basis(produced, pick)));
    used[static_cast<std::size_t>(pick)] = true;
    ++produced;

    // deflate the coefficient direction v
    const int dim = static_cast<int>(deflated.rows());
    if (dim == 1) {
      deflated.resize(0, N);
      break;
    }
    Matrix vcol = v;
    Eigen::HouseholderQR<Matrix> qr(vcol);
    Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
    Matrix next = (q.transpose() * deflated).bottomRows(dim - 1);
    deflated = std::move(next);
  }
  // complete with whatever is left of the deflated basis
  for (int r = 0; r < deflated.rows() && produced < n; ++r, ++produced)
    basis.row(produced) = deflated.row(r);
  result.basis = std::move(basis);
  result.certified = std::min<int>(result.certified, static_cast<int>(result.indices.size()));
  return result;
}

GreedyBasisResult greedyCoordinateBasis(const OrthonormalSystem& sys) {
  return greedyCoordinateBasis(unweightedCopy(sys), sys.atoms());
}

namespace {

// rotation coefficients of the greedy basis relative to the system rows
Matrix greedyRotation(const OrthonormalSystem& sys) {
  Matrix copy = unweightedCopy(sys);
  GreedyBasisResult greedy = greedyCoordinateBasis(copy, sys.atoms());
  return greedy.basis * copy.adjoint();
}

}  // namespace

EstimateReport gPrimeFunctional(const OrthonormalSystem& sys, const OptBudget& budget) {
  const int n = sys.functions();
  const int N = sys.atoms();
  const Matrix& values = sys.values;
  const RealVector& p = sys.space.weights;

  auto solveFromAssignment = [&](std::vector<int> assign, const Matrix& c0, int maxIter,
                                 Matrix& cOut, double& valOut, int& itersOut) {
    Matrix c = c0;
    double assigned = -1;
    int it = 0;
    for (; it < maxIter; ++it) {
      // per-function compression over its atoms, top eigenvector
      for (int l = 0; l < n; ++l) {
        Matrix gl = Matrix::Zero(n, n);
        bool any = false;
        for (int j = 0; j < N; ++j) {
          if (assign[static_cast<std::size_t>(j)] != l) continue;
          gl.noalias() += p(j) * values.col(j) * values.col(j).adjoint();
          any = true;
        }
        if (!any) continue;
        Eigen::SelfAdjointEigenSolver<Matrix> eig(gl);
        c.row(l) = eig.eigenvectors().col(n - 1).adjoint();
      }
      Matrix h = c * values;
      std::vector<int> next;
      double val = supIntegral(h, p, &next);
      if (val <= assigned * (1 + 1e-12) && next == assign) break;
      assigned = val;
      assign = std::move(next);
    }
    cOut = c;
    valOut = assigned;
    itersOut = it;
  };

  const int warm = static_cast<int>(budget.warmStarts.size());
  const int total = std::max(1, budget.restarts) + warm;
  double bestVal = -1;
  Matrix bestC;
  int bestIters = 0;
  for (int r = 0; r < total; ++r) {
    Matrix c0 = Matrix::Identity(n, n);
    std::vector<int> assign(static_cast<std::size_t>(N), 0);
    if (r < warm) {
      c0 = budget.warmStarts[static_cast<std::size_t>(r)];
      supIntegral(c0 * values, p, &assign);
    } else if (r - warm == 0) {
      supIntegral(values, p, &assign);
    } else if (r - warm == 1) {
      c0 = greedyRotation(sys);
      supIntegral(c0 * values, p, &assign);
    } else {
      Rng rng(deriveSeed(budget.policy.masterSeed, 0x69ULL + static_cast<std::uint64_t>(r)));
      for (int j = 0; j < N; ++j)
        assign[static_cast<std::size_t>(j)] = static_cast<int>(rng.uniform01() * n) % n;
    }
    Matrix c;
    double val;
    int iters;
    solveFromAssignment(assign, c0, budget.maxIterations, c, val, iters);
    if (val > bestVal) {
      bestVal = val;
      bestC = c;
      bestIters = iters;
    }
  }

  EstimateReport rep;
  rep.value = std::sqrt(std::max(0.0, supIntegral(bestC * values, p, nullptr)));
  rep.direction = Direction::Lower;
  rep.witness = bestC;
  rep.method = "g-prime-block-ascent";
  rep.seed = budget.policy.masterSeed;
  rep.restarts = total;
  rep.iterations = bestIters;
  return rep;
}

EstimateReport gDoublePrimeFunctional(const OrthonormalSystem& sys, const OptBudget& budget) {
  const int n = sys.functions();
  const Matrix& values = sys.values;
  const RealVector& p = sys.space.weights;

  AscentProblem problem;
  problem.value = [&](const Matrix& o) {
    return std::sqrt(std::max(0.0, supIntegral(o * values, p, nullptr)));
  };
  problem.gradient = [&](const Matrix& o) {
    Matrix h = o * values;
    std::vector<int> arg;
    double s = supIntegral(h, p, &arg);
    double f = std::sqrt(std::max(1e-30, s));
    Matrix g = Matrix::Zero(n, n);
    for (int j = 0; j < values.cols(); ++j) {
      int l = arg[static_cast<std::size_t>(j)];
      g.row(l) += p(j) * h(l, j) * values.col(j).adjoint();
    }
    g /= f;
    // tangent projection on the unitary group
    Matrix sym = (o.adjoint() * g + g.adjoint() * o) / 2.0;
    return (g - o * sym).eval();
  };
  problem.project = polarUnitary;

  const ScalarField field = sys.field;
  auto start = [&](int r) -> Matrix {
    if (r == 0) return greedyRotation(sys);
    if (r == 1) return Matrix::Identity(n, n);
    Rng rng(deriveSeed(budget.policy.masterSeed, 0x99ULL + static_cast<std::uint64_t>(r)));
    return haarMatrix(n, rng, field);
  };

  EstimateReport rep = maximizeWithRestarts(problem, start, budget, "g-double-prime-riemannian");
  rep.witness = polarUnitary(rep.witness);
  rep.value = problem.value(rep.witness);
  return rep;
}

DisjointSupportResult disjointSupportExtract(const OrthonormalSystem& psi, double eta) {
  const int n = psi.functions();
  const int N = psi.atoms();
  DisjointSupportResult out;
  out.threshold = eta;
  out.masses = RealVector::Zero(n);
  out.assignment.resize(static_cast<std::size_t>(N));
  supIntegral(psi.values, psi.space.weights, &out.assignment);
  for (int j = 0; j < N; ++j) {
    int l = out.assignment[static_cast<std::size_t>(j)];
    out.masses(l) += psi.space.weights(j) * std::norm(psi.values(l, j));
  }
  out.totalMass = out.masses.sum();
  for (int l = 0; l < n; ++l)
    if (out.masses(l) >= eta) out.selected.push_back(l);
  return out;
}

ProcrustesAlignment procrustesAlign(const Matrix& disjointFunctions,
                                    const OrthonormalSystem& subspace, double tau,
                                    int maxIterations) {
  const int n = subspace.functions();
  if (disjointFunctions.rows() != n || disjointFunctions.cols() != subspace.atoms())
    throw DimensionMismatch("procrustesAlign: shape mismatch");
  // C_{lk} = (f_l, t_k)
  Matrix c = disjointFunctions * subspace.space.weights.asDiagonal() * subspace.values.adjoint();
  Eigen::JacobiSVD<Matrix> hyp(c);
  if (hyp.singularValues().size() && hyp.singularValues()(0) > 1.0 + 1e-6)
    throw HypothesisViolated("procrustesAlign: sum_l |(f_l, h)|^2 exceeds ||h||^2 on H");

  Matrix o = Matrix::Identity(n, n);
  double prev = -1;
  int it = 0;
  for (; it < maxIterations; ++it) {
    Vector d = (c * o.adjoint()).diagonal();
    double sum = d.cwiseAbs().sum();
    Vector ph(n);
    for (int l = 0; l < n; ++l) {
      double a = std::abs(d(l));
      ph(l) = a == 0.0 ? Complex(1, 0) : d(l) / a;
    }
    Matrix m = ph.conjugate().asDiagonal() * c;
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    o = svd.matrixU() * svd.matrixV().adjoint();
    if (sum <= prev * (1 + 1e-13)) break;
    prev = sum;
  }

  Vector d = (c * o.adjoint()).diagonal();
  Matrix rows = o * subspace.values;
  for (int l = 0; l < n; ++l) {
    double a = std::abs(d(l));
    Complex w = a == 0.0 ? Complex(1, 0) : a / std::conj(d(l));
    rows.row(l) *= w;
  }
  ProcrustesAlignment out;
  out.system = validateSystem(std::move(rows), subspace.space, 1e-7, subspace.field);
  out.overlaps = d.cwiseAbs();
  out.tau = tau;
  out.iterations = it;
  for (int l = 0; l < n; ++l)
    if (out.overlaps(l) >= tau) out.selected.push_back(l);
  return out;
}

BucketingResult equalNormBucketing(const LinearMap& T, const Matrix& family) {
  const int count = static_cast<int>(family.cols());
  std::vector<int> live;
  std::vector<double> mass(static_cast<std::size_t>(count), 0.0);
  double total = 0;
  for (int i = 0; i < count; ++i) {
    double t = norm(T.matrix * family.col(i), T.codomain);
    mass[static_cast<std::size_t>(i)] = t * t;
    total += t * t;
    if (t > 0) live.push_back(i);
  }
  if (live.empty()) throw AllZeroImages("equalNormBucketing: T kills the whole family");
  const int n = static_cast<int>(live.size());

  int m0 = 1;
  while ((1LL << m0) < 3LL * n) ++m0;  // 2^(m0-1) < 3n <= 2^m0

  // bucket by normalized ||T x_i||^2 in (2^-m, 2^(1-m)]
  std::vector<int> bucket(static_cast<std::size_t>(count), 0);
  for (int i : live) {
    double t = mass[static_cast<std::size_t>(i)] / total;
    int m = 1;
    while (t <= std::ldexp(1.0, -m) && m < 64) ++m;
    bucket[static_cast<std::size_t>(i)] = m;
  }

  std::int64_t replicated = 0;
  for (int i : live) {
    int m = bucket[static_cast<std::size_t>(i)];
    if (m <= m0) replicated += 1LL << (m0 - m);
  }

  BucketingResult out;
  out.certificate.replicated = static_cast<int>(replicated);
  out.certificate.m0 = m0;
  out.certificate.valid = replicated >= n && replicated < 6LL * n;

  out.family.resize(family.rows(), n);
  out.source.clear();
  int filled = 0;
  for (int m = 1; m <= m0 && filled < n; ++m) {
    for (int i : live) {
      if (bucket[static_cast<std::size_t>(i)] != m) continue;
      const std::int64_t mult = 1LL << (m0 - m);
      double imageNorm = std::sqrt(mass[static_cast<std::size_t>(i)]);
      for (std::int64_t j = 0; j < mult && filled < n; ++j) {
        out.family.col(filled) = family.col(i) / imageNorm;
        out.source.push_back(i);
        ++filled;
      }
      if (filled >= n) break;
    }
  }
  // ||T y|| = 1 for every output column by construction
  return out;
}

ContactMeasureResult contactMeasure(const OrthonormalSystem& sys) {
  const int n = sys.functions();
  const int N = sys.atoms();
  double maxNorm = 0;
  for (int j = 0; j < N; ++j) maxNorm = std::max(maxNorm, sys.values.col(j).norm());
  std::vector<int> keep;
  for (int j = 0; j < N; ++j)
    if (sys.values.col(j).norm() > 1e-14 * maxNorm) keep.push_back(j);
  ContactMeasureResult out;
  out.field = sys.field;
  out.points.resize(n, static_cast<int>(keep.size()));
  out.masses.resize(static_cast<int>(keep.size()));
  for (int idx = 0; idx < static_cast<int>(keep.size()); ++idx) {
    int j = keep[static_cast<std::size_t>(idx)];
    Vector f = sys.values.col(j);
    double fn = f.norm();
    out.points.col(idx) = f / fn;
    out.masses(idx) = sys.space.weights(j) * fn * fn / n;
  }
  return out;
}

double minkowskiGauge(const ContactMeasureResult& contact, const Vector& x) {
  const int n = static_cast<int>(contact.points.rows());
  if (x.size() != n) throw DimensionMismatch("minkowskiGauge: dimension mismatch");
  const int m = static_cast<int>(contact.points.cols());
  const bool realCase = contact.field == ScalarField::Real && x.imag().norm() == 0.0 &&
                        contact.points.imag().norm() == 0.0;
  detail::SimplexResult sol;
  if (realCase) {
    RealMatrix g(n, 2 * m);
    g.leftCols(m) = contact.points.real();
    g.rightCols(m) = -contact.points.real();
    sol = detail::solveSimplex(g, x.real(), RealVector::Ones(2 * m));
  } else {
    // inscribed 72-gon for the modulus constraint: relative slack < 1e-3
    const int K = 72;
    RealMatrix g(2 * n, m * K);
    for (int j = 0; j < m; ++j)
      for (int t = 0; t < K; ++t) {
        Vector z = std::polar(1.0, 2.0 * M_PI * t / K) * contact.points.col(j);
        g.block(0, j * K + t, n, 1) = z.real();
        g.block(n, j * K + t, n, 1) = z.imag();
      }
    RealVector b(2 * n);
    b.head(n) = x.real();
    b.tail(n) = x.imag();
    sol = detail::solveSimplex(g, b, RealVector::Ones(m * K));
  }
  if (!sol.feasible)
    throw DimensionMismatch("minkowskiGauge: target outside the span of the contact points");
  return sol.objective;
}

double minkowskiGauge(const OrthonormalSystem& sys, const Vector& x) {
  return minkowskiGauge(contactMeasure(sys), x);
}

}  // namespace onslab
