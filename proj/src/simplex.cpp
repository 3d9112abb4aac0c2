#include "simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace onslab::detail {

namespace {

// One simplex phase on the tableau; cost row sits at index m, rhs in the last
// column. Entering/leaving by Bland's rule.
bool runPhase(Eigen::MatrixXd& t, std::vector<int>& basis, int m, int ncols, double eps) {
  const int rhs = ncols;
  for (int iter = 0; iter < 50000; ++iter) {
    int enter = -1;
    for (int j = 0; j < ncols; ++j)
      if (t(m, j) < -eps) {
        enter = j;
        break;
      }
    if (enter < 0) return true;  // optimal
    int leave = -1;
    double bestRatio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (t(i, enter) > eps) {
        double ratio = t(i, rhs) / t(i, enter);
        if (ratio < bestRatio - eps ||
            (ratio < bestRatio + eps && (leave < 0 || basis[i] < basis[leave]))) {
          bestRatio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return false;  // unbounded
    double piv = t(leave, enter);
    t.row(leave) /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double f = t(i, enter);
      if (f != 0.0) t.row(i) -= f * t.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }
  return false;  // iteration cap; treated as failure
}

}  // namespace

SimplexResult solveSimplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& c, double eps) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());

  // phase 1: minimize the artificial sum
  {
    const int ncols = n + m;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, ncols + 1);
    t.block(0, 0, m, n) = A;
    for (int i = 0; i < m; ++i) {
      t(i, ncols) = b(i);
      if (t(i, ncols) < 0) t.row(i) = -t.row(i);
      t(i, n + i) = 1.0;
    }
    std::vector<int> basis(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;
    for (int i = 0; i < m; ++i) t.row(m) -= t.row(i);
    for (int i = 0; i < m; ++i) t(m, n + i) = 0.0;
    if (!runPhase(t, basis, m, ncols, eps)) return {};
    if (-t(m, ncols) > 1e-7) return {};  // infeasible

    // drive artificials out where possible
    for (int i = 0; i < m; ++i) {
      if (basis[static_cast<std::size_t>(i)] < n) continue;
      int enter = -1;
      for (int j = 0; j < n; ++j)
        if (std::abs(t(i, j)) > 1e-8) {
          enter = j;
          break;
        }
      if (enter < 0) continue;  // redundant constraint
      double piv = t(i, enter);
      t.row(i) /= piv;
      for (int k = 0; k <= m; ++k) {
        if (k == i) continue;
        double f = t(k, enter);
        if (f != 0.0) t.row(k) -= f * t.row(i);
      }
      basis[static_cast<std::size_t>(i)] = enter;
    }

    // phase 2 on the structural columns of the surviving rows
    std::vector<int> keep;
    for (int i = 0; i < m; ++i)
      if (basis[static_cast<std::size_t>(i)] < n) keep.push_back(i);
    const int m2 = static_cast<int>(keep.size());
    Eigen::MatrixXd t2 = Eigen::MatrixXd::Zero(m2 + 1, n + 1);
    std::vector<int> basis2(static_cast<std::size_t>(m2));
    for (int i = 0; i < m2; ++i) {
      t2.row(i).head(n) = t.row(keep[static_cast<std::size_t>(i)]).head(n);
      t2(i, n) = t(keep[static_cast<std::size_t>(i)], n + m);
      basis2[static_cast<std::size_t>(i)] = basis[static_cast<std::size_t>(keep[i])];
    }
    for (int j = 0; j < n; ++j) t2(m2, j) = c(j);
    for (int i = 0; i < m2; ++i) {
      double cb = c(basis2[static_cast<std::size_t>(i)]);
      if (cb != 0.0) t2.row(m2) -= cb * t2.row(i);
    }
    if (!runPhase(t2, basis2, m2, n, eps)) return {};

    SimplexResult result;
    result.feasible = true;
    result.solution = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m2; ++i) result.solution(basis2[static_cast<std::size_t>(i)]) = t2(i, n);
    result.objective = c.dot(result.solution);
    return result;
  }
}

}  // namespace onslab::detail
