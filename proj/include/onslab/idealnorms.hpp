#pragma once

#include "onslab/core.hpp"
#include "onslab/optim.hpp"

namespace onslab {

// Phi(u) = || sum_k phi_k u e_k ||_{L_2(X)}; exact weighted sum over atoms.
double phiNorm(const OrthonormalSystem& sys, const LinearMap& u);

// Trace-dual norm Phi*(v) = sup { |tr(vu)| : Phi(u) = 1 } for v into ell_2^n.
// Exact (Hilbert-Schmidt) when v maps from a Hilbert space.
EstimateReport phiDual(const OrthonormalSystem& sys, const LinearMap& v,
                       const OptBudget& budget);

// pi_Phi(T) = sup { Phi(Tu) : ||u : ell_2^n -> X|| <= 1 }. Lower bound with a
// feasible witness; restart 0 is the identity embedding, the rest are
// Haar-random partial isometries.
EstimateReport piPhi(const OrthonormalSystem& sys, const LinearMap& T,
                     const OptBudget& budget);

// pi_2^n(T) = pi_{U_n}(T); exact between Hilbert spaces (truncated singular
// values), otherwise the pi_Phi engine with the canonical system.
EstimateReport pi2n(const LinearMap& T, int n, const OptBudget& budget);

// Equal-norm pi_2^n: the same supremum restricted to families with equal
// image norms, enforced by projection onto the constraint each iteration.
EstimateReport equalNormPi2n(const LinearMap& T, int n, const OptBudget& budget);

// Trace norm between Hilbert spaces; throws NonHilbert otherwise.
double nuclearNormHilbert(const LinearMap& v);

// Weak-ell_2 norm of a column family in X: sup over the dual ball of
// (sum_i |<x_i, a>|^2)^(1/2) = || family map : ell_2^n -> X ||. Exact for
// dual exponents 1, 2 and (by sign enumeration) real ell_1 domains.
double weakL2Norm(const Matrix& family, const FiniteNormedSpace& X,
                  int innerRestarts = 8, std::uint64_t seed = 0);

// Column family (as map ell_2^n -> X) norm together with a maximizing
// direction c: den = ||S c||_X, ||c||_2 = 1.
struct FamilyNormWitness {
  double value = 0;
  Vector direction;
  bool exact = false;
};
FamilyNormWitness familyMapNorm(const Matrix& family, const FiniteNormedSpace& X,
                                int innerRestarts, std::uint64_t seed);

// Phi(T w) for a stored contraction witness; throws if w is infeasible
// beyond tolerance.
double reevaluatePiPhi(const OrthonormalSystem& sys, const LinearMap& T,
                       const Matrix& witness, double tol = 1e-7);

// Certified upper bound of || u : ell_2^n -> X ||: the X-norm of the vector
// of row 2-norms. Tight on rank-one maps; keeps ratio-mode witnesses feasible.
double rowNormUpperBound(const Matrix& u, const FiniteNormedSpace& X);

// Canonical system U_n: identity values on n unit-mass atoms.
OrthonormalSystem canonicalUnitSystem(int n, ScalarField field = ScalarField::Real);

}  // namespace onslab
