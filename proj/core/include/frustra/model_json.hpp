#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "frustra/hamiltonian.hpp"

namespace frustra {

// Model file schema:
//   {"name": string, "sites": [d0, d1, ...], "labels": [string, ...]?,
//    "terms": [{"coeff": number,
//               "factors": [{"site": int, "op": "X"|"Y"|"Z"|[[re, im], ...]}]}]}
// Explicit operators list the d*d entries row-major as [re, im] pairs.
SpinModel model_from_json(const nlohmann::json& doc);
nlohmann::json model_to_json(const SpinModel& model);
SpinModel load_model_file(const std::filesystem::path& path);

// Assignment file: {"local": [term indices], "interaction": [term indices]}.
ExplicitAssignment assignment_from_json(const nlohmann::json& doc);
ExplicitAssignment load_assignment_file(const std::filesystem::path& path);

}  // namespace frustra
