#include "onslab/optim.hpp"

#include "onslab/parallel.hpp"

#include <cmath>

namespace onslab {

AscentOutcome ascend(const AscentProblem& problem, Matrix start, int maxIterations,
                     double tol) {
  Matrix x = problem.project ? problem.project(start) : std::move(start);
  double f = problem.value(x);
  double step = 1.0;
  int stall = 0;
  int it = 0;
  for (; it < maxIterations; ++it) {
    Matrix g = problem.gradient(x);
    double gn2 = g.squaredNorm();
    if (!(gn2 > 1e-30)) break;
    bool accepted = false;
    double eta = step;
    for (int bt = 0; bt < 40; ++bt) {
      Matrix cand = x + eta * g;
      if (problem.project) cand = problem.project(cand);
      double fc = problem.value(cand);
      if (fc > f + 1e-4 * eta * gn2) {
        double gain = fc - f;
        x = std::move(cand);
        f = fc;
        step = eta * 2.0;
        accepted = true;
        stall = (gain <= tol * std::max(1.0, std::abs(f))) ? stall + 1 : 0;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted || stall >= 3) break;
  }
  return AscentOutcome{std::move(x), f, it};
}

EstimateReport maximizeWithRestarts(const AscentProblem& problem,
                                    const std::function<Matrix(int)>& start,
                                    const OptBudget& budget, const char* method) {
  const int warm = static_cast<int>(budget.warmStarts.size());
  const int total = std::max(1, budget.restarts) + warm;
  std::vector<AscentOutcome> outcomes(static_cast<std::size_t>(total));
  parallel::forIndex(total, [&](std::int64_t r) {
    Matrix s = r < warm ? budget.warmStarts[static_cast<std::size_t>(r)]
                        : start(static_cast<int>(r - warm));
    outcomes[static_cast<std::size_t>(r)] =
        ascend(problem, std::move(s), budget.maxIterations, budget.convergenceTol);
  });
  int best = 0;
  for (int r = 1; r < total; ++r)
    if (outcomes[static_cast<std::size_t>(r)].value > outcomes[static_cast<std::size_t>(best)].value)
      best = r;
  EstimateReport rep;
  rep.value = outcomes[static_cast<std::size_t>(best)].value;
  rep.direction = Direction::Lower;
  rep.witness = std::move(outcomes[static_cast<std::size_t>(best)].point);
  rep.method = method;
  rep.seed = budget.policy.masterSeed;
  rep.restarts = total;
  rep.iterations = outcomes[static_cast<std::size_t>(best)].iterations;
  return rep;
}

}  // namespace onslab
