#pragma once

#include "onslab/core.hpp"
#include "onslab/rng.hpp"

#include <functional>
#include <vector>

namespace onslab {

// Budget shared by every supremum estimator. Deterministic given the policy:
// restart r draws its start from deriveSeed(policy.masterSeed, r), entries of
// warmStarts are consumed before the generated starts.
struct OptBudget {
  int restarts = 16;
  int maxIterations = 200;
  double convergenceTol = 1e-9;
  RngPolicy policy;
  std::vector<Matrix> warmStarts;
  int innerRestarts = 8;               // nested suprema (dual-ball ascent)
  std::int64_t surrogateSamples = 2048;  // fixed-stream MC surrogate size
};

struct AscentProblem {
  std::function<double(const Matrix&)> value;
  std::function<Matrix(const Matrix&)> gradient;
  // Feasibility projection / normalization; applied to every trial point.
  std::function<Matrix(const Matrix&)> project;
};

struct AscentOutcome {
  Matrix point;
  double value = 0;
  int iterations = 0;
};

// Monotone Armijo backtracking ascent. The start is projected first; kinks in
// the objective only ever stop progress, never break feasibility.
AscentOutcome ascend(const AscentProblem& problem, Matrix start, int maxIterations,
                     double tol);

// Runs one ascent per restart (in parallel), keeps the best value; ties break
// toward the smallest restart index so the result is schedule-independent.
EstimateReport maximizeWithRestarts(const AscentProblem& problem,
                                    const std::function<Matrix(int)>& start,
                                    const OptBudget& budget, const char* method);

}  // namespace onslab
