#include "onslab/stochastic.hpp"

#include "onslab/parallel.hpp"

#include <cmath>
#include <vector>

namespace onslab {

namespace {

constexpr std::int64_t kChunk = 8192;

struct ChunkSums {
  double q = 0, q2 = 0, c = 0, c2 = 0, qc = 0;
  std::int64_t count = 0;
};

struct McEstimate {
  double mean = 0, stderr_ = 0;
  std::int64_t samples = 0;
};

// Chunked mean of q with the control variate c (known mean cvMean). Chunk
// boundaries are fixed by the policy, partial sums are reduced in chunk
// order, so the result does not depend on the thread count.
template <class PerSample>
McEstimate chunkedMean(std::int64_t samples, std::uint64_t seed, double cvMean,
                       PerSample&& perSample) {
  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<ChunkSums> sums(static_cast<std::size_t>(chunks));
  parallel::forIndex(chunks, [&](std::int64_t ci) {
    Rng rng(deriveSeed(seed, static_cast<std::uint64_t>(ci)));
    const std::int64_t lo = ci * kChunk;
    const std::int64_t hi = std::min(samples, lo + kChunk);
    ChunkSums s;
    for (std::int64_t i = lo; i < hi; ++i) {
      double q, c;
      perSample(rng, q, c);
      s.q += q;
      s.q2 += q * q;
      s.c += c;
      s.c2 += c * c;
      s.qc += q * c;
      ++s.count;
    }
    sums[static_cast<std::size_t>(ci)] = s;
  });
  ChunkSums t;
  for (const auto& s : sums) {
    t.q += s.q;
    t.q2 += s.q2;
    t.c += s.c;
    t.c2 += s.c2;
    t.qc += s.qc;
    t.count += s.count;
  }
  const double n = static_cast<double>(t.count);
  const double mq = t.q / n, mc = t.c / n;
  const double vq = std::max(0.0, t.q2 / n - mq * mq);
  const double vc = std::max(0.0, t.c2 / n - mc * mc);
  const double cov = t.qc / n - mq * mc;
  double beta = 0.0, residVar = vq;
  if (vc > 1e-14 * std::max(1.0, mc * mc)) {
    beta = cov / vc;
    residVar = std::max(0.0, vq - cov * cov / vc);
  }
  McEstimate est;
  est.mean = mq - beta * (mc - cvMean);
  est.stderr_ = std::sqrt(residVar / n);
  est.samples = t.count;
  return est;
}

EstimateReport bracketFromSquaredMean(const McEstimate& est, const RngPolicy& policy,
                                      const char* method) {
  EstimateReport rep;
  rep.direction = Direction::Bracket;
  rep.value = std::sqrt(std::max(0.0, est.mean));
  rep.lo = std::sqrt(std::max(0.0, est.mean - 3.0 * est.stderr_));
  rep.hi = std::sqrt(std::max(0.0, est.mean + 3.0 * est.stderr_));
  rep.method = method;
  rep.seed = policy.masterSeed;
  rep.iterations = static_cast<int>(std::min<std::int64_t>(est.samples, INT32_MAX));
  return rep;
}

ScalarField mapField(const LinearMap& u) {
  return (u.domain.field == ScalarField::Complex || u.codomain.field == ScalarField::Complex)
             ? ScalarField::Complex
             : ScalarField::Real;
}

}  // namespace

namespace detail {

void completeElliptic(double k, double& K, double& E) {
  k = std::min(k, 1.0 - 1e-14);
  double a = 1.0, b = std::sqrt(1.0 - k * k), c = k;
  double sum = c * c / 2.0;
  double pow2 = 1.0;
  for (int it = 0; it < 64 && std::abs(c) > 1e-17; ++it) {
    double an = (a + b) / 2.0;
    c = (a - b) / 2.0;
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    sum += pow2 / 2.0 * c * c;
  }
  K = M_PI / (2.0 * a);
  E = K * (1.0 - sum);
}

double l1GaussianSecondMoment(const Matrix& a, const RealVector& w, ScalarField field) {
  const int m = static_cast<int>(a.rows());
  RealVector sigma(m);
  for (int i = 0; i < m; ++i) sigma(i) = a.row(i).norm();
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    if (sigma(i) == 0.0) continue;
    total += w(i) * w(i) * sigma(i) * sigma(i);  // E|Z_i|^2 = sigma_i^2, both fields
    for (int j = i + 1; j < m; ++j) {
      if (sigma(j) == 0.0) continue;
      Complex corr = (a.row(i) * a.row(j).adjoint())(0, 0) / (sigma(i) * sigma(j));
      double cross;
      if (field == ScalarField::Real) {
        double rho = std::clamp(corr.real(), -1.0, 1.0);
        cross = (2.0 / M_PI) * sigma(i) * sigma(j) *
                (std::sqrt(std::max(0.0, 1.0 - rho * rho)) + rho * std::asin(rho));
      } else {
        double k = std::clamp(std::abs(corr), 0.0, 1.0);
        double K, E;
        completeElliptic(k, K, E);
        cross = 0.5 * sigma(i) * sigma(j) * (2.0 * E - (1.0 - k * k) * K);
      }
      total += 2.0 * w(i) * w(j) * cross;
    }
  }
  return total;
}

}  // namespace detail

EstimateReport gaussianAverage(const LinearMap& u, const RngPolicy& policy) {
  if (u.domain.exponent != 2.0)
    throw Error("gaussianAverage: domain must carry exponent 2");
  const ScalarField field = mapField(u);
  const int n = u.domain.dim;

  EstimateReport rep;
  rep.seed = policy.masterSeed;
  if (u.codomain.exponent == 2.0) {
    Matrix s = u.matrix;
    if (u.codomain.weights)
      for (int i = 0; i < u.codomain.dim; ++i) s.row(i) *= std::sqrt((*u.codomain.weights)(i));
    rep.value = s.norm();
    rep.direction = Direction::Exact;
    rep.method = "gaussian-average-hs";
    return rep;
  }
  if (u.codomain.exponent == 1.0) {
    RealVector w = u.codomain.weights ? *u.codomain.weights
                                      : RealVector::Ones(u.codomain.dim);
    rep.value = std::sqrt(detail::l1GaussianSecondMoment(u.matrix, w, field));
    rep.direction = Direction::Exact;
    rep.method = field == ScalarField::Real ? "gaussian-average-l1-arcsin"
                                            : "gaussian-average-l1-elliptic";
    return rep;
  }

  // control variate: squared 2-norm of D^(1/2) A g with known mean
  Matrix s = u.matrix;
  if (u.codomain.weights)
    for (int i = 0; i < u.codomain.dim; ++i) s.row(i) *= std::sqrt((*u.codomain.weights)(i));
  const double cvMean = s.squaredNorm();
  McEstimate est = chunkedMean(
      policy.sampleCount, deriveSeed(policy.masterSeed, 0xA11CE5u), cvMean,
      [&](Rng& rng, double& q, double& c) {
        Vector g = rng.gaussianVector(n, field);
        Vector y = u.matrix * g;
        double nv = norm(y, u.codomain);
        q = nv * nv;
        if (u.codomain.weights) {
          double acc = 0;
          for (int i = 0; i < u.codomain.dim; ++i)
            acc += (*u.codomain.weights)(i)*std::norm(y(i));
          c = acc;
        } else {
          c = y.squaredNorm();
        }
      });
  return bracketFromSquaredMean(est, policy, "gaussian-average-mc");
}

EstimateReport rademacherAverage(const LinearMap& u, const RngPolicy& policy) {
  if (u.domain.exponent != 2.0)
    throw Error("rademacherAverage: domain must carry exponent 2");
  if (mapField(u) == ScalarField::Complex)
    throw ComplexUnsupported("rademacherAverage: real scalars only");
  const int n = u.domain.dim;
  EstimateReport rep;
  rep.seed = policy.masterSeed;
  if (n <= 16) {
    // full enumeration over sign patterns; eps_1 = +1 by symmetry
    const std::int64_t patterns = n == 1 ? 1 : (1LL << (n - 1));
    std::vector<double> partial(static_cast<std::size_t>((patterns + kChunk - 1) / kChunk), 0.0);
    parallel::forIndex(static_cast<std::int64_t>(partial.size()), [&](std::int64_t ci) {
      const std::int64_t lo = ci * kChunk, hi = std::min(patterns, lo + kChunk);
      double acc = 0;
      Vector eps(n);
      for (std::int64_t mask = lo; mask < hi; ++mask) {
        eps(0) = 1.0;
        for (int k = 1; k < n; ++k) eps(k) = (mask >> (k - 1)) & 1 ? 1.0 : -1.0;
        double nv = norm(u.matrix * eps, u.codomain);
        acc += nv * nv;
      }
      partial[static_cast<std::size_t>(ci)] = acc;
    });
    double total = 0;
    for (double p : partial) total += p;
    rep.value = std::sqrt(total / static_cast<double>(patterns));
    rep.direction = Direction::Exact;
    rep.method = "rademacher-enumeration";
    return rep;
  }
  Matrix s = u.matrix;
  if (u.codomain.weights)
    for (int i = 0; i < u.codomain.dim; ++i) s.row(i) *= std::sqrt((*u.codomain.weights)(i));
  const double cvMean = s.squaredNorm();
  McEstimate est = chunkedMean(
      policy.sampleCount, deriveSeed(policy.masterSeed, 0x5165u), cvMean,
      [&](Rng& rng, double& q, double& c) {
        Vector eps(n);
        for (int k = 0; k < n; ++k) eps(k) = rng.rademacher();
        Vector y = u.matrix * eps;
        double nv = norm(y, u.codomain);
        q = nv * nv;
        double acc = 0;
        for (int i = 0; i < u.codomain.dim; ++i)
          acc += u.codomain.weightAt(i) * std::norm(y(i));
        c = acc;
      });
  return bracketFromSquaredMean(est, policy, "rademacher-mc");
}

EstimateReport sphereAverageIdentity(const LinearMap& u, const RngPolicy& policy) {
  if (u.domain.exponent != 2.0)
    throw Error("sphereAverageIdentity: domain must carry exponent 2");
  const ScalarField field = mapField(u);
  const int n = u.domain.dim;
  Matrix s = u.matrix;
  if (u.codomain.weights)
    for (int i = 0; i < u.codomain.dim; ++i) s.row(i) *= std::sqrt((*u.codomain.weights)(i));
  const double cvMean = s.squaredNorm();  // E n||D A x||^2 over the sphere
  McEstimate est = chunkedMean(
      policy.sampleCount, deriveSeed(policy.masterSeed, 0x5fe3eu), cvMean,
      [&](Rng& rng, double& q, double& c) {
        Vector g = rng.gaussianVector(n, field);
        double gn = g.norm();
        if (gn == 0.0) {
          q = c = 0;
          return;
        }
        Vector x = g / gn;
        Vector y = u.matrix * x;
        double nv = norm(y, u.codomain);
        q = n * nv * nv;
        double acc = 0;
        for (int i = 0; i < u.codomain.dim; ++i)
          acc += u.codomain.weightAt(i) * std::norm(y(i));
        c = n * acc;
      });
  return bracketFromSquaredMean(est, policy, "sphere-average-mc");
}

Matrix fixedGaussianStream(int n, std::int64_t count, std::uint64_t seed, ScalarField field) {
  Rng rng(deriveSeed(seed, 0xf1f0u));
  return rng.gaussianMatrix(n, static_cast<int>(count), field);
}

}  // namespace onslab
