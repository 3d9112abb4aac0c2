#include "onslab/rng.hpp"

namespace onslab {

Matrix haarMatrix(int n, Rng& rng, ScalarField field) {
  Matrix g = rng.gaussianMatrix(n, n, field);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    Complex d = r(j, j);
    double a = std::abs(d);
    q.col(j) *= (a == 0.0 ? Complex(1, 0) : d / a);
  }
  return q;
}

Matrix haarRows(int rows, int n, Rng& rng, ScalarField field) {
  return haarMatrix(n, rng, field).topRows(rows);
}

}  // namespace onslab
