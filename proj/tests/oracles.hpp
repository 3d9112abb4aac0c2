// Independent brute-force oracles used by the tests: plain serial Monte-Carlo
// (no control variate, separate seeding path) and dense grid sweeps over
// small spheres and rotation groups. These stay independent of the library's
// estimator implementations on purpose.
#pragma once

#include "onslab/core.hpp"
#include "onslab/idealnorms.hpp"
#include "onslab/rng.hpp"

#include <cmath>

namespace oracles {

using namespace onslab;

inline double serialGaussianMc(const LinearMap& u, std::int64_t samples, std::uint64_t seed) {
  ScalarField field = (u.domain.field == ScalarField::Complex ||
                       u.codomain.field == ScalarField::Complex)
                          ? ScalarField::Complex
                          : ScalarField::Real;
  Rng rng(seed * 2654435761ULL + 13);
  double acc = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    Vector g = rng.gaussianVector(u.domain.dim, field);
    double nv = norm(u.matrix * g, u.codomain);
    acc += nv * nv;
  }
  return std::sqrt(acc / static_cast<double>(samples));
}

// sup_{||x||_X = 1} ||Ax||_Y over a dense sweep of a 2-dimensional real sphere
inline double gridOperatorNorm2Real(const LinearMap& u, int points = 20000) {
  double best = 0;
  for (int t = 0; t < points; ++t) {
    double th = M_PI * t / points;
    Vector x(2);
    x << std::cos(th), std::sin(th);
    double nx = norm(x, u.domain);
    best = std::max(best, norm(u.matrix * x, u.codomain) / nx);
  }
  return best;
}

// sup over O(2) (rotations and reflections) of Phi(T O); extreme points of
// the 2x2 contraction ball
inline double gridPiPhi2Real(const OrthonormalSystem& sys, const LinearMap& T,
                             int points = 5000) {
  double best = 0;
  for (int refl = 0; refl < 2; ++refl) {
    for (int t = 0; t < points; ++t) {
      double th = 2.0 * M_PI * t / points;
      Matrix w(2, 2);
      double c = std::cos(th), s = std::sin(th);
      if (refl == 0)
        w << c, -s, s, c;
      else
        w << c, s, s, -c;
      LinearMap u{FiniteNormedSpace::lp(2, 2.0), T.domain, w};
      best = std::max(best, phiNorm(sys, compose(T, u)));
    }
  }
  return best;
}

// dense sweep of the real 2-sphere of coefficients
template <class F>
double gridSphere2RealMax(F&& value, int points = 20000) {
  double best = -1e300;
  for (int t = 0; t < points; ++t) {
    double th = 2.0 * M_PI * t / points;
    Vector a(2);
    a << std::cos(th), std::sin(th);
    best = std::max(best, value(a));
  }
  return best;
}

// complex 2-sphere modulo global phase: (cos t, e^{i s} sin t)
template <class F>
double gridSphere2ComplexMax(F&& value, int tPoints = 200, int sPoints = 200) {
  double best = -1e300;
  for (int a = 0; a <= tPoints; ++a) {
    double th = M_PI_2 * a / tPoints;
    for (int b = 0; b < sPoints; ++b) {
      double ps = 2.0 * M_PI * b / sPoints;
      Vector v(2);
      v << Complex(std::cos(th), 0), std::polar(std::sin(th), ps);
      best = std::max(best, value(v));
    }
  }
  return best;
}

}  // namespace oracles
