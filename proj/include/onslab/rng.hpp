#pragma once

#include "onslab/core.hpp"

#include <cstdint>
#include <random>

namespace onslab {

// Reproducibility policy for every stochastic estimate: identical
// (masterSeed, sampleCount, budget) means bit-identical reports, with
// per-restart / per-chunk streams derived through deriveSeed.
struct RngPolicy {
  std::uint64_t masterSeed = 1;
  std::int64_t sampleCount = 200000;
};

// splitmix64 step; the standard 64-bit finalizer.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t deriveSeed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s ^= stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
  return splitmix64(s) ^ (a << 1);
}

// mt19937_64 with explicit double conversion and Box-Muller gaussians, so
// streams are identical across platforms and standard-library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform in (0, 1]
  double uniformPos() { return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53; }
  // uniform in [0, 1)
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (haveSpare_) {
      haveSpare_ = false;
      return spare_;
    }
    double u1 = uniformPos();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    haveSpare_ = true;
    return r * std::cos(a);
  }

  // standard complex normal, E|z|^2 = 1
  Complex gaussianComplex() {
    return Complex(gaussian(), gaussian()) * M_SQRT1_2;
  }

  double rademacher() { return (gen_() & 1ULL) ? 1.0 : -1.0; }

  Vector gaussianVector(int n, ScalarField field) {
    Vector v(n);
    if (field == ScalarField::Complex)
      for (int i = 0; i < n; ++i) v(i) = gaussianComplex();
    else
      for (int i = 0; i < n; ++i) v(i) = gaussian();
    return v;
  }

  Matrix gaussianMatrix(int rows, int cols, ScalarField field) {
    Matrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i)
        m(i, j) = field == ScalarField::Complex ? Complex(gaussianComplex()) : Complex(gaussian());
    return m;
  }

 private:
  std::mt19937_64 gen_;
  bool haveSpare_ = false;
  double spare_ = 0.0;
};

// Haar-distributed orthogonal/unitary matrix via QR of a gaussian matrix
// with the R-diagonal sign fix.
Matrix haarMatrix(int n, Rng& rng, ScalarField field);

// First `rows` rows of a Haar matrix (a random coisometry).
Matrix haarRows(int rows, int n, Rng& rng, ScalarField field);

}  // namespace onslab
