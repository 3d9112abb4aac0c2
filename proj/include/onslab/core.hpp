#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace onslab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultOrthoTol = 1e-8;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Gram matrix of a candidate system deviates from the identity.
struct GramViolation : Error {
  int row, col;
  double deviation;
  GramViolation(int k, int l, double dev)
      : Error("gram deviation " + std::to_string(dev) + " at (" + std::to_string(k) + "," +
              std::to_string(l) + ")"),
        row(k), col(l), deviation(dev) {}
};

struct RankDeficient : Error {
  using Error::Error;
};
struct ComplexUnsupported : Error {
  using Error::Error;
};
struct NonHilbert : Error {
  using Error::Error;
};
struct DegenerateDenominator : Error {
  using Error::Error;
};
struct CardinalityOverflow : Error {
  using Error::Error;
};
struct AllZeroImages : Error {
  using Error::Error;
};
struct HypothesisViolated : Error {
  using Error::Error;
};

enum class ScalarField { Real, Complex };

// Finite measure space: a list of atoms with strictly positive masses.
// Normalization is not required; probability spaces are just one case.
struct MeasureSpace {
  RealVector weights;

  MeasureSpace() = default;
  explicit MeasureSpace(RealVector w);
  static MeasureSpace uniform(int atoms);  // probability weights 1/N
  static MeasureSpace unit(int atoms);     // counting measure

  int atoms() const { return static_cast<int>(weights.size()); }
  double total() const { return weights.sum(); }
};

// Weighted inner product  sum_j p_j f_j conj(g_j).
Complex innerProduct(const Vector& f, const Vector& g, const MeasureSpace& space);

// n functions on N atoms, pairwise orthonormal in the weighted inner product.
// Row k holds the values of the k-th function.
struct OrthonormalSystem {
  MeasureSpace space;
  ScalarField field = ScalarField::Real;
  Matrix values;  // n x N, entry (k, j) = phi_k(omega_j)

  int functions() const { return static_cast<int>(values.rows()); }
  int atoms() const { return static_cast<int>(values.cols()); }
};

// Largest |Gram - I| entry of a candidate row family.
double gramDeviation(const Matrix& values, const MeasureSpace& space);

// Checks the Gram identity within orthoTol; throws GramViolation with the
// worst entry otherwise.
OrthonormalSystem validateSystem(Matrix values, MeasureSpace space,
                                 double orthoTol = kDefaultOrthoTol,
                                 ScalarField field = ScalarField::Real);

// Orthonormalizes the rows in the weighted inner product. Throws RankDeficient
// when a row is (numerically) dependent on its predecessors.
OrthonormalSystem gramSchmidt(Matrix values, MeasureSpace space,
                              ScalarField field = ScalarField::Real, double rankTol = 1e-10);

// ell_p^m or a weighted L_p space over real or complex scalars.
// For p < inf the weights sit inside the sum: (sum_j w_j |x_j|^p)^(1/p);
// for p = inf they scale inside the max: max_j w_j |x_j|. Absent weights
// mean the plain ell_p norm. p = inf is a first-class value, not a limit.
struct FiniteNormedSpace {
  int dim = 0;
  double exponent = 2.0;
  std::optional<RealVector> weights;
  ScalarField field = ScalarField::Real;

  static FiniteNormedSpace lp(int dim, double p, ScalarField field = ScalarField::Real);
  // L_p^N with the normalized sum convention (uniform weights 1/N, p < inf).
  static FiniteNormedSpace lpUniform(int dim, double p, ScalarField field = ScalarField::Real);
  static FiniteNormedSpace weighted(int dim, double p, RealVector w,
                                    ScalarField field = ScalarField::Real);
  bool isHilbert() const { return exponent == 2.0; }
  double weightAt(int i) const { return weights ? (*weights)(i) : 1.0; }
};

double norm(const Vector& x, const FiniteNormedSpace& X);

// Dual space under the pairing <x, a> = sum_j x_j conj(a_j): dual exponent
// p' and reciprocal-weight bookkeeping.
FiniteNormedSpace dualSpace(const FiniteNormedSpace& X);

// g with d norm(x + t d) / dt = Re <d, g> at t = 0; a subgradient at kinks.
Vector normGradient(const Vector& x, const FiniteNormedSpace& X);

struct LinearMap {
  FiniteNormedSpace domain, codomain;
  Matrix matrix;  // codomain.dim x domain.dim

  static LinearMap identity(const FiniteNormedSpace& X);
  // Formal identity matrix between two spaces of equal dimension (iota_{pq}).
  static LinearMap formalIdentity(FiniteNormedSpace from, FiniteNormedSpace to);
};

// u after v.
LinearMap compose(const LinearMap& u, const LinearMap& v);

// Conjugate transpose between the dual spaces: <u x, b> = <x, adjoint(u) b>.
LinearMap adjoint(const LinearMap& u);

enum class Direction { Exact, Lower, Bracket };

// Universal return type for every non-closed-form quantity: a value with
// direction semantics, the optimizing witness, and the budget that produced it.
struct EstimateReport {
  double value = 0.0;
  Direction direction = Direction::Exact;
  double lo = 0.0, hi = 0.0;  // set when direction == Bracket
  Matrix witness;
  std::string method;
  std::uint64_t seed = 0;
  int restarts = 0;
  int iterations = 0;
};

// Exact for (2,2), (1,q), (p,inf) exponent pairs; otherwise a certified lower
// bound from projected ascent, upgraded to a bracket when domain.dim <= 2
// via a fine sphere grid.
EstimateReport operatorNorm(const LinearMap& u);

// The iterative engine behind operatorNorm, exposed for cross-checks.
EstimateReport operatorNormLowerBound(const LinearMap& u, int restarts, int maxIterations,
                                      std::uint64_t seed);

// Weighted Frobenius norm of the matrix viewed between Hilbert spaces.
double hilbertSchmidtNorm(const LinearMap& u);

// Scaled matrix D_cod^(1/2) * A * D_dom^(-1/2); singular values of this are
// the Hilbert-space singular values of u.
Matrix hilbertScaledMatrix(const LinearMap& u);

}  // namespace onslab
