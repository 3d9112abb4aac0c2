#pragma once

#include "onslab/constructions.hpp"
#include "onslab/core.hpp"

#include <json.hpp>

#include <string>

namespace onslab {

using Json = nlohmann::json;

// System files: { "weights": [..], "field": "real"|"complex",
//                 "matrix_real": [[..]], "matrix_imag"?: [[..]] }
// with rows = functions, columns = atoms.
Json systemToJson(const OrthonormalSystem& sys);
OrthonormalSystem systemFromJson(const Json& j, double orthoTol = kDefaultOrthoTol);

// Space descriptors: { "dim": m, "p": number|"inf", "weights"?: [..] }.
Json spaceToJson(const FiniteNormedSpace& space);
FiniteNormedSpace spaceFromJson(const Json& j, ScalarField field);

// Map files mirror the system format plus domain/codomain descriptors.
Json mapToJson(const LinearMap& map);
LinearMap mapFromJson(const Json& j);

Json reportToJson(const EstimateReport& report);

Json recipeToJson(const SystemRecipe& recipe);
SystemRecipe recipeFromJson(const Json& j);

Json readJsonFile(const std::string& path);
void writeJsonFile(const std::string& path, const Json& j);

}  // namespace onslab
