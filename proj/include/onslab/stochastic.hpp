#pragma once

#include "onslab/core.hpp"
#include "onslab/rng.hpp"

namespace onslab {

// ell(u) = (E || sum_k g_k u e_k ||^2)^(1/2) for u from ell_2^n.
// Exact for codomain exponent 2 (Hilbert-Schmidt norm) and exponent 1
// (pairwise-correlation closed form); otherwise a Monte-Carlo bracket of
// mean +- 3 standard errors with the Hilbert-Schmidt control variate.
EstimateReport gaussianAverage(const LinearMap& u, const RngPolicy& policy);

// r(u) = (E || sum_k eps_k u e_k ||^2)^(1/2); exact sign enumeration for
// n <= 16, Monte-Carlo bracket beyond. Real scalars only.
EstimateReport rademacherAverage(const LinearMap& u, const RngPolicy& policy);

// sqrt(n) (int_S ||u x||^2 dsigma)^(1/2) by uniform sphere sampling; the
// polar form of ell(u), kept as an independent oracle for gaussianAverage.
EstimateReport sphereAverageIdentity(const LinearMap& u, const RngPolicy& policy);

// Frozen n x count sample matrix for deterministic optimization surrogates.
Matrix fixedGaussianStream(int n, std::int64_t count, std::uint64_t seed, ScalarField field);

namespace detail {

// E (sum_i w_i |Z_i|)^2 for Z = A g with standard gaussian g; closed form.
double l1GaussianSecondMoment(const Matrix& a, const RealVector& w, ScalarField field);

// Complete elliptic integrals via the arithmetic-geometric mean.
void completeElliptic(double k, double& K, double& E);

}  // namespace detail

}  // namespace onslab
