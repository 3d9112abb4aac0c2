#pragma once

#include "onslab/core.hpp"
#include "onslab/idealnorms.hpp"
#include "onslab/optim.hpp"

namespace onslab {

// c_Phi(T): best c in || sum phi_k T x_k || <= c || sum g_k x_k ||, estimated
// by maximizing phiNorm(sys, T u) / ell(u) over vector families u. The
// gaussian denominator uses a frozen sample stream during the ascent and an
// independent, larger stream for the reported value.
EstimateReport cotypeConst(const OrthonormalSystem& sys, const LinearMap& T,
                           const OptBudget& budget);

// t_Phi(T): maximizes ell(T u) / phiNorm(sys, u); denominator exact.
EstimateReport typeConst(const OrthonormalSystem& sys, const LinearMap& T,
                         const OptBudget& budget);

// Modified type t^_Phi(T): coefficients c_k(f) = sum_j p_j (T f(omega_j))
// conj(phi_k(omega_j)) extracted from an L_2(X)-valued function f; maximizes
// the gaussian average of the coefficient family over ||f|| = 1.
EstimateReport modifiedTypeConst(const OrthonormalSystem& sys, const LinearMap& T,
                                 const OptBudget& budget);

// Gaussian type/cotype constants restricted to n vectors; familyFactor > 1
// probes the pi_2 vs pi_2^n gap with kn-vector families.
EstimateReport c2n(const LinearMap& T, int n, const OptBudget& budget, int familyFactor = 1);
EstimateReport t2n(const LinearMap& T, int n, const OptBudget& budget, int familyFactor = 1);

// Witness ratios, re-evaluated with exact formulas / the policy stream.
double cotypeRatioAt(const OrthonormalSystem& sys, const LinearMap& T, const Matrix& family,
                     const RngPolicy& policy);
double typeRatioAt(const OrthonormalSystem& sys, const LinearMap& T, const Matrix& family,
                   const RngPolicy& policy);
double modifiedTypeRatioAt(const OrthonormalSystem& sys, const LinearMap& T,
                           const Matrix& fValues, const RngPolicy& policy);

// The coefficient extraction map behind t^_Phi: columns c_k(f).
Matrix coefficientFamily(const OrthonormalSystem& sys, const LinearMap& T,
                         const Matrix& fValues);

}  // namespace onslab
