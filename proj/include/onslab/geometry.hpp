#pragma once

#include "onslab/core.hpp"
#include "onslab/optim.hpp"

#include <vector>

namespace onslab {

// Greedy coordinate basis of a subspace H of ell_2^N: at each step pick the
// atom with the largest leverage ||P_H e_j||, take the normalized projection
// as the next basis element, deflate. The first ceil(n/3) steps carry the
// certified bound |<h_k, e_{j_k}>|^2 >= (n - 2k + 2)/N.
struct GreedyBasisResult {
  Matrix basis;                    // n x N orthonormal rows spanning H
  std::vector<int> indices;        // distinct atom picks, one per greedy step
  std::vector<double> guarantees;  // |<h_k, e_{j_k}>|^2 per greedy step
  int certified = 0;               // steps covered by the bound, ceil(n/3)
};

GreedyBasisResult greedyCoordinateBasis(const Matrix& orthonormalRows, int N);

// System variant: functions are first pushed to the unweighted isometric copy
// f -> (sqrt(p_j) f(omega_j))_j.
GreedyBasisResult greedyCoordinateBasis(const OrthonormalSystem& sys);

// sup (int sup_l |h_l|^2 dp)^(1/2) over n functions in span(Phi) with
// ||h_l||_2 <= 1; block-coordinate ascent between atom assignments and top
// eigenvectors of the compressed Gram. Witness rows are the coefficients.
EstimateReport gPrimeFunctional(const OrthonormalSystem& sys, const OptBudget& budget);

// Same functional over orthonormal families Psi = O Phi; Riemannian ascent
// on the orthogonal/unitary group with the greedy basis as warm start.
// Witness is the rotation O.
EstimateReport gDoublePrimeFunctional(const OrthonormalSystem& sys, const OptBudget& budget);

// Assigns each atom to the pointwise-dominant function, accumulates the mass
// int_{A_l} |psi_l|^2 dp, and keeps the indices at or above the threshold.
struct DisjointSupportResult {
  std::vector<int> assignment;  // atom -> function index
  RealVector masses;            // per function
  std::vector<int> selected;    // masses >= threshold
  double threshold = 0;
  double totalMass = 0;         // = int sup_k |psi_k|^2 dp
};

DisjointSupportResult disjointSupportExtract(const OrthonormalSystem& psi, double eta);

// Aligns an orthonormal basis of H with n disjoint-support unit functions by
// iterated phase-Procrustes; phases are absorbed so the kept overlaps are
// real and nonnegative.
struct ProcrustesAlignment {
  OrthonormalSystem system;
  RealVector overlaps;        // |(f_l, psi_l)|
  std::vector<int> selected;  // overlaps >= tau
  double tau = 0;
  int iterations = 0;
};

ProcrustesAlignment procrustesAlign(const Matrix& disjointFunctions,
                                    const OrthonormalSystem& subspace, double tau,
                                    int maxIterations = 200);

// Dyadic equal-norm reduction behind the sqrt(6) comparison: replicates each
// vector 2^(m0 - m) times according to its ||Tx||^2 bucket, certifies
// n <= |I| < 6n, and returns an n-element equal-norm subfamily.
struct BucketingCertificate {
  int replicated = 0;  // |I|
  int m0 = 0;
  bool valid = false;  // n <= |I| < 6n
};

struct BucketingResult {
  Matrix family;            // n columns, ||T y_i|| all equal
  std::vector<int> source;  // original index per output column
  BucketingCertificate certificate;
};

BucketingResult equalNormBucketing(const LinearMap& T, const Matrix& family);

// Contact measure of a system: atoms F_j/||F_j|| with mass p_j ||F_j||^2 / n;
// covariance is I/n and Phi(u) = sqrt(n) (sum_j mass_j ||u x_j||^2)^(1/2).
struct ContactMeasureResult {
  Matrix points;     // n x M unit columns
  RealVector masses;
  ScalarField field = ScalarField::Real;
};

ContactMeasureResult contactMeasure(const OrthonormalSystem& sys);

// Minkowski gauge of x with respect to absconv{contact points}: an exact
// linear program over the signed generators in the real case; the complex
// modulus constraint uses a 72-gon with sec(pi/72) - 1 < 1e-3 relative slack.
double minkowskiGauge(const ContactMeasureResult& contact, const Vector& x);
double minkowskiGauge(const OrthonormalSystem& sys, const Vector& x);

}  // namespace onslab
