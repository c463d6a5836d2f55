#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "frustra/bounds.hpp"
#include "frustra/perturbation.hpp"
#include "frustra/saturation.hpp"

namespace frustra::cli {

using json = nlohmann::ordered_json;

json to_json(const ComplexVector& v);
json to_json(const PureState& psi);
json to_json(const GeometricMeasureResult& g);
json to_json(const FrustrationReport& r);
json to_json(const ProofStepDiagnostics& d);
json to_json(const ProductSubspace& k);
json to_json(const ExcitedBoundReport& r);
json to_json(const ExcessDecomposition& d);
json to_json(const SaturationRecord& rec);
json to_json(const PerturbationCheckReport& r);

/// Null for an absent value.
json optional_number(const std::optional<double>& v);

/// %.17g, or an empty string for an absent value.
std::string csv_number(double v);
std::string csv_number(const std::optional<double>& v);

/// Comma separated rows with a header; cells are written verbatim.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace frustra::cli
