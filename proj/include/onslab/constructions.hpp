#pragma once

#include "onslab/core.hpp"
#include "onslab/optim.hpp"

#include <vector>

namespace onslab {

// phi_k(j) = exp(2 pi i k j / N), k = 1..n, on Z_N with uniform weights 1/N.
// Exact orthogonality for n <= N.
OrthonormalSystem fourierSystem(int n, int N);

// Finite section of the trigonometric system over an explicit frequency set;
// frequencies must be distinct mod N.
OrthonormalSystem fourierSectionSystem(const std::vector<int>& frequencies, int N);

// U_n on N uniform atoms: phi_k = sqrt(N) e_k.
OrthonormalSystem canonicalSystem(int n, int N);

// First n rows of a Haar orthogonal/unitary matrix, scaled by sqrt(N).
OrthonormalSystem haarRandomSystem(int n, int N, std::uint64_t seed,
                                   ScalarField field = ScalarField::Real);

// Random n-dimensional gaussian subspace of L_2^N, orthonormalized; the
// random model behind the small-type constructions.
OrthonormalSystem l1SubspaceSystem(int n, int N, std::uint64_t seed);

// S_k subset {2^k, ..., 2^(k+1)-1} with |S_k| = floor(4^(k/q)), uniformly
// random without replacement. Throws CardinalityOverflow when the requested
// cardinality exceeds the block.
std::vector<std::vector<int>> bourgainSubset(double q, int kmax, std::uint64_t seed);

// Best c in ||sum alpha_k phi_k||_{L_q} <= c ||alpha||_2 over a probability
// space (weights rescaled internally when they do not sum to one).
EstimateReport kqConstant(const OrthonormalSystem& sys, double q, const OptBudget& budget);

// Lambda_2(Phi) = 1 / min { ||sum alpha_k phi_k||_{L_1} : ||alpha||_2 = 1 }.
EstimateReport lambda2Constant(const OrthonormalSystem& sys, const OptBudget& budget);

// L_q norm of sum_k alpha_k phi_k on the probability-rescaled space.
double spanLqNorm(const OrthonormalSystem& sys, const Vector& alpha, double q);

struct SystemRecipe {
  std::string kind;  // canonical | fourier | haarRandom | l1Subspace | bourgainSubset
  int n = 0;
  int N = 0;
  double q = 0.0;
  int kmax = 0;
  std::uint64_t seed = 0;
};

OrthonormalSystem buildSystem(const SystemRecipe& recipe);

}  // namespace onslab
