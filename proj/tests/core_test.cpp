#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "onslab/core.hpp"
#include "onslab/rng.hpp"
#include "oracles.hpp"

using namespace onslab;

namespace {

Matrix dftRows(int n, int N) {
  Matrix m(n, N);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < N; ++j) m(k, j) = std::polar(1.0, 2.0 * M_PI * (k + 1) * j / N);
  return m;
}

Vector rv(std::initializer_list<double> xs) {
  Vector v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("inner product on weighted atoms") {
  MeasureSpace half(RealVector::Constant(2, 0.5));
  CHECK(innerProduct(rv({1, 1}), rv({1, 1}), half).real() == doctest::Approx(1.0));

  MeasureSpace any(rv({0.3, 1.7}).real());
  CHECK(std::abs(innerProduct(rv({1, 0}), rv({0, 1}), any)) == doctest::Approx(0.0));

  // complex conjugation sits on the second argument
  MeasureSpace ones = MeasureSpace::unit(2);
  Vector f(2), g(2);
  f << Complex(1, 0), Complex(0, 1);
  g << Complex(1, 0), Complex(0, -1);
  CHECK(std::abs(innerProduct(f, g, ones)) == doctest::Approx(0.0));

  CHECK_THROWS_AS(innerProduct(rv({1, 2, 3}), rv({1, 2}), ones), DimensionMismatch);
}

TEST_CASE("validateSystem accepts DFT rows and rejects repeats") {
  int N = 8;
  auto sys = validateSystem(dftRows(3, N) , MeasureSpace::uniform(N), 1e-10,
                            ScalarField::Complex);
  CHECK(sys.functions() == 3);

  CHECK_NOTHROW(validateSystem(Matrix::Identity(2, 2), MeasureSpace::unit(2)));

  Matrix twice(2, 4);
  twice.row(0) = dftRows(1, 4).row(0);
  twice.row(1) = twice.row(0);
  CHECK_THROWS_AS(validateSystem(twice, MeasureSpace::uniform(4), 1e-8, ScalarField::Complex),
                  GramViolation);
}

TEST_CASE("gramSchmidt") {
  MeasureSpace ones = MeasureSpace::unit(2);
  Matrix rows(2, 2);
  rows << 1, 0, 1, 1;
  auto sys = gramSchmidt(rows, ones);
  CHECK(std::abs(sys.values(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(sys.values(1, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(sys.values(1, 0)) == doctest::Approx(0.0).epsilon(1e-12));

  Matrix ortho = dftRows(2, 4);
  auto again = gramSchmidt(ortho, MeasureSpace::uniform(4), ScalarField::Complex);
  // already orthonormal input comes back up to phase
  for (int k = 0; k < 2; ++k) {
    Complex ip = innerProduct(again.values.row(k).transpose(), ortho.row(k).transpose(),
                              again.space);
    CHECK(std::abs(ip) == doctest::Approx(1.0));
  }

  Matrix dep(2, 2);
  dep << 1, 1, 2, 2;
  CHECK_THROWS_AS(gramSchmidt(dep, ones), RankDeficient);
}

TEST_CASE("norms") {
  CHECK(norm(rv({3, 4}), FiniteNormedSpace::lp(2, 2.0)) == doctest::Approx(5.0));
  CHECK(norm(rv({1, 1}), FiniteNormedSpace::lpUniform(2, 1.0)) == doctest::Approx(1.0));
  CHECK(norm(rv({1, -2}), FiniteNormedSpace::lp(2, kInf)) == doctest::Approx(2.0));
  CHECK(norm(rv({1, 2, 2}), FiniteNormedSpace::lp(3, 3.0)) ==
        doctest::Approx(std::cbrt(17.0)));
}

TEST_CASE("norm axioms on random triples") {
  std::vector<FiniteNormedSpace> spaces = {
      FiniteNormedSpace::lp(3, 1.0),
      FiniteNormedSpace::lp(4, 2.0),
      FiniteNormedSpace::lp(3, kInf),
      FiniteNormedSpace::lpUniform(4, 3.0),
      FiniteNormedSpace::weighted(3, 1.5, rv({0.2, 1.0, 2.5}).real()),
      FiniteNormedSpace::lp(3, 2.0, ScalarField::Complex),
      FiniteNormedSpace::lpUniform(3, 4.0, ScalarField::Complex),
  };
  Rng rng(42);
  for (const auto& X : spaces) {
    for (int trial = 0; trial < 100; ++trial) {
      Vector x = rng.gaussianVector(X.dim, X.field);
      Vector y = rng.gaussianVector(X.dim, X.field);
      double lambda = 2.0 * rng.uniform01() - 1.0;
      CHECK(norm(x + y, X) <= (norm(x, X) + norm(y, X)) * (1 + 1e-12));
      CHECK(norm(lambda * x, X) ==
            doctest::Approx(std::abs(lambda) * norm(x, X)).epsilon(1e-12));
      CHECK(norm(x, X) >= 0.0);
    }
    CHECK(norm(Vector::Zero(X.dim), X) == 0.0);
  }
}

TEST_CASE("dual space bookkeeping round-trips") {
  auto roundtrip = [](const FiniteNormedSpace& X) {
    FiniteNormedSpace back = dualSpace(dualSpace(X));
    CHECK(back.dim == X.dim);
    if (X.exponent == kInf)
      CHECK(back.exponent == kInf);
    else
      CHECK(back.exponent == doctest::Approx(X.exponent));
    if (X.weights) {
      REQUIRE(back.weights.has_value());
      CHECK((*back.weights - *X.weights).norm() < 1e-12);
    }
  };
  roundtrip(FiniteNormedSpace::lp(3, 1.0));
  roundtrip(FiniteNormedSpace::lp(3, kInf));
  roundtrip(FiniteNormedSpace::lpUniform(4, 2.0));
  roundtrip(FiniteNormedSpace::weighted(3, 3.0, rv({0.5, 2.0, 1.0}).real()));
}

TEST_CASE("duality pairing of the adjoint") {
  Matrix mi(1, 1);
  mi(0, 0) = Complex(0, 1);
  LinearMap u{FiniteNormedSpace::lp(1, 2.0, ScalarField::Complex),
              FiniteNormedSpace::lp(1, 2.0, ScalarField::Complex), mi};
  CHECK(adjoint(u).matrix(0, 0) == Complex(0, -1));

  struct Shape {
    FiniteNormedSpace dom, cod;
  };
  std::vector<Shape> shapes = {
      {FiniteNormedSpace::lp(2, 2.0), FiniteNormedSpace::lp(3, 1.0)},
      {FiniteNormedSpace::lpUniform(3, 4.0), FiniteNormedSpace::lp(2, kInf)},
      {FiniteNormedSpace::lp(2, 2.0, ScalarField::Complex),
       FiniteNormedSpace::lpUniform(3, 2.0, ScalarField::Complex)},
  };
  Rng rng(7);
  for (const auto& sh : shapes) {
    ScalarField f = sh.dom.field;
    LinearMap m{sh.dom, sh.cod, rng.gaussianMatrix(sh.cod.dim, sh.dom.dim, f)};
    LinearMap mt = adjoint(m);
    for (int t = 0; t < 100; ++t) {
      Vector x = rng.gaussianVector(sh.dom.dim, f);
      Vector b = rng.gaussianVector(sh.cod.dim, f);
      // <y, b> = sum_j y_j conj(b_j); Eigen's dot conjugates its receiver
      Complex lhs = b.dot(m.matrix * x);
      Complex rhs = (mt.matrix * b).dot(x);
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("operator norm exact paths") {
  auto id2 = LinearMap::identity(FiniteNormedSpace::lp(2, 2.0));
  CHECK(operatorNorm(id2).value == doctest::Approx(1.0));
  CHECK(operatorNorm(id2).direction == Direction::Exact);

  auto iota = LinearMap::formalIdentity(FiniteNormedSpace::lp(5, 2.0),
                                        FiniteNormedSpace::lp(5, kInf));
  CHECK(operatorNorm(iota).value == doctest::Approx(1.0));

  Matrix col(2, 1);
  col << 1, 1;
  LinearMap u{FiniteNormedSpace::lp(1, 2.0), FiniteNormedSpace::lp(2, 1.0), col};
  auto rep = operatorNorm(u);
  CHECK(rep.value == doctest::Approx(2.0));
  CHECK(rep.direction == Direction::Exact);
}

TEST_CASE("operator norm ascent matches singular values and grids") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    LinearMap u{FiniteNormedSpace::lp(4, 2.0), FiniteNormedSpace::lp(3, 2.0),
                rng.gaussianMatrix(3, 4, ScalarField::Real)};
    double svd = operatorNorm(u).value;
    double ascent = operatorNormLowerBound(u, 8, 300, 11 + trial).value;
    CHECK(ascent == doctest::Approx(svd).epsilon(1e-6));
  }
  // nonconvex codomain: bracket against a dense sphere sweep
  for (int trial = 0; trial < 5; ++trial) {
    LinearMap u{FiniteNormedSpace::lp(2, 2.0), FiniteNormedSpace::lp(3, 1.5),
                rng.gaussianMatrix(3, 2, ScalarField::Real)};
    auto rep = operatorNorm(u);
    double grid = oracles::gridOperatorNorm2Real(u);
    CHECK(rep.direction == Direction::Bracket);
    CHECK(rep.value == doctest::Approx(grid).epsilon(2e-2));
    CHECK(rep.hi >= grid * (1 - 1e-9));
  }
}
