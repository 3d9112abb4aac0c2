#include "onslab/io.hpp"

#include <fstream>

namespace onslab {

namespace {

Json matrixRealPart(const Matrix& m, bool imag) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(imag ? m(i, j).imag() : m(i, j).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrixFromParts(const Json& re, const Json* im) {
  const int rows = static_cast<int>(re.size());
  const int cols = rows ? static_cast<int>(re.at(0).size()) : 0;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(re.at(i).size()) != cols) throw Error("ragged matrix_real");
    for (int j = 0; j < cols; ++j) {
      double a = re.at(i).at(j).get<double>();
      double b = im ? im->at(i).at(j).get<double>() : 0.0;
      m(i, j) = Complex(a, b);
    }
  }
  return m;
}

RealVector realVectorFromJson(const Json& j) {
  RealVector v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) v(i) = j.at(i).get<double>();
  return v;
}

Json realVectorToJson(const RealVector& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

Json systemToJson(const OrthonormalSystem& sys) {
  Json j;
  j["weights"] = realVectorToJson(sys.space.weights);
  j["field"] = sys.field == ScalarField::Complex ? "complex" : "real";
  j["matrix_real"] = matrixRealPart(sys.values, false);
  if (sys.field == ScalarField::Complex) j["matrix_imag"] = matrixRealPart(sys.values, true);
  return j;
}

OrthonormalSystem systemFromJson(const Json& j, double orthoTol) {
  MeasureSpace space(realVectorFromJson(j.at("weights")));
  ScalarField field =
      j.value("field", std::string("real")) == "complex" ? ScalarField::Complex
                                                         : ScalarField::Real;
  const Json* im = j.contains("matrix_imag") ? &j.at("matrix_imag") : nullptr;
  Matrix values = matrixFromParts(j.at("matrix_real"), im);
  return validateSystem(std::move(values), std::move(space), orthoTol, field);
}

Json spaceToJson(const FiniteNormedSpace& space) {
  Json j;
  j["dim"] = space.dim;
  if (space.exponent == kInf)
    j["p"] = "inf";
  else
    j["p"] = space.exponent;
  if (space.weights) j["weights"] = realVectorToJson(*space.weights);
  return j;
}

FiniteNormedSpace spaceFromJson(const Json& j, ScalarField field) {
  double p;
  if (j.at("p").is_string()) {
    if (j.at("p").get<std::string>() != "inf") throw Error("space: bad exponent string");
    p = kInf;
  } else {
    p = j.at("p").get<double>();
  }
  int dim = j.at("dim").get<int>();
  if (j.contains("weights"))
    return FiniteNormedSpace::weighted(dim, p, realVectorFromJson(j.at("weights")), field);
  return FiniteNormedSpace::lp(dim, p, field);
}

Json mapToJson(const LinearMap& map) {
  Json j;
  const bool cplx = map.domain.field == ScalarField::Complex ||
                    map.codomain.field == ScalarField::Complex;
  j["field"] = cplx ? "complex" : "real";
  j["domain"] = spaceToJson(map.domain);
  j["codomain"] = spaceToJson(map.codomain);
  j["matrix_real"] = matrixRealPart(map.matrix, false);
  if (cplx) j["matrix_imag"] = matrixRealPart(map.matrix, true);
  return j;
}

LinearMap mapFromJson(const Json& j) {
  ScalarField field =
      j.value("field", std::string("real")) == "complex" ? ScalarField::Complex
                                                         : ScalarField::Real;
  FiniteNormedSpace dom = spaceFromJson(j.at("domain"), field);
  FiniteNormedSpace cod = spaceFromJson(j.at("codomain"), field);
  const Json* im = j.contains("matrix_imag") ? &j.at("matrix_imag") : nullptr;
  Matrix m = matrixFromParts(j.at("matrix_real"), im);
  if (m.rows() != cod.dim || m.cols() != dom.dim)
    throw DimensionMismatch("map file: matrix does not match the declared spaces");
  return LinearMap{std::move(dom), std::move(cod), std::move(m)};
}

Json reportToJson(const EstimateReport& report) {
  Json j;
  j["value"] = report.value;
  switch (report.direction) {
    case Direction::Exact: j["direction"] = "exact"; break;
    case Direction::Lower: j["direction"] = "lower"; break;
    case Direction::Bracket:
      j["direction"] = "bracket";
      j["lo"] = report.lo;
      j["hi"] = report.hi;
      break;
  }
  j["method"] = report.method;
  j["seed"] = report.seed;
  j["restarts"] = report.restarts;
  j["iterations"] = report.iterations;
  if (report.witness.size()) {
    j["witness_real"] = matrixRealPart(report.witness, false);
    if (report.witness.imag().norm() != 0.0)
      j["witness_imag"] = matrixRealPart(report.witness, true);
  }
  return j;
}

Json recipeToJson(const SystemRecipe& recipe) {
  Json j;
  j["kind"] = recipe.kind;
  if (recipe.n) j["n"] = recipe.n;
  if (recipe.N) j["N"] = recipe.N;
  if (recipe.q != 0.0) j["q"] = recipe.q;
  if (recipe.kmax) j["kmax"] = recipe.kmax;
  j["seed"] = recipe.seed;
  return j;
}

SystemRecipe recipeFromJson(const Json& j) {
  SystemRecipe r;
  r.kind = j.at("kind").get<std::string>();
  r.n = j.value("n", 0);
  r.N = j.value("N", 0);
  r.q = j.value("q", 0.0);
  r.kmax = j.value("kmax", 0);
  r.seed = j.value("seed", 0ULL);
  return r;
}

Json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void writeJsonFile(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace onslab
