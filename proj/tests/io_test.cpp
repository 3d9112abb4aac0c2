#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "onslab/io.hpp"
#include "onslab/rng.hpp"

using namespace onslab;

TEST_CASE("system files round-trip") {
  auto sys = buildSystem(SystemRecipe{"fourier", 3, 8, 0, 0, 0});
  Json j = systemToJson(sys);
  auto back = systemFromJson(j);
  CHECK(back.field == ScalarField::Complex);
  CHECK((back.values - sys.values).norm() < 1e-15);
  CHECK((back.space.weights - sys.space.weights).norm() < 1e-15);

  // corrupting a row trips validation on load
  j["matrix_real"][1] = j["matrix_real"][0];
  j["matrix_imag"][1] = j["matrix_imag"][0];
  CHECK_THROWS_AS(systemFromJson(j), GramViolation);
}

TEST_CASE("map files round-trip with inf exponents and weights") {
  Rng rng(3);
  LinearMap u{FiniteNormedSpace::lpUniform(3, 1.0), FiniteNormedSpace::lp(2, kInf),
              rng.gaussianMatrix(2, 3, ScalarField::Real)};
  Json j = mapToJson(u);
  CHECK(j["codomain"]["p"] == "inf");
  auto back = mapFromJson(j);
  CHECK(back.domain.exponent == 1.0);
  CHECK(back.codomain.exponent == kInf);
  REQUIRE(back.domain.weights.has_value());
  CHECK((back.matrix - u.matrix).norm() < 1e-15);

  j["matrix_real"] = Json::array({Json::array({1.0, 2.0})});
  CHECK_THROWS_AS(mapFromJson(j), DimensionMismatch);
}

TEST_CASE("reports serialize their direction and witness") {
  EstimateReport rep;
  rep.value = 2.5;
  rep.direction = Direction::Bracket;
  rep.lo = 2.4;
  rep.hi = 2.6;
  rep.method = "x";
  rep.seed = 99;
  rep.witness = Matrix::Identity(2, 2);
  Json j = reportToJson(rep);
  CHECK(j["direction"] == "bracket");
  CHECK(j["lo"] == 2.4);
  CHECK(j["seed"] == 99);
  CHECK(j.contains("witness_real"));
  CHECK(!j.contains("witness_imag"));
}

TEST_CASE("recipe json") {
  Json j = {{"kind", "haarRandom"}, {"n", 4}, {"N", 16}, {"seed", 7}};
  auto r = recipeFromJson(j);
  CHECK(r.kind == "haarRandom");
  CHECK(r.n == 4);
  auto sys = buildSystem(r);
  CHECK(sys.functions() == 4);
  Json back = recipeToJson(r);
  CHECK(back["seed"] == 7);
}
