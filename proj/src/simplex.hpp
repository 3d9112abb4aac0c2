#pragma once

#include <Eigen/Dense>

namespace onslab::detail {

struct SimplexResult {
  bool feasible = false;
  double objective = 0.0;
  Eigen::VectorXd solution;
};

// Dense two-phase primal simplex with Bland's rule for
//   min c'x  s.t.  A x = b,  x >= 0.
SimplexResult solveSimplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& c, double eps = 1e-10);

}  // namespace onslab::detail
