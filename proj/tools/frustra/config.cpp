#include "config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "frustra/model_json.hpp"

namespace frustra::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

template <typename T>
T parse_number(const std::string& text, const std::string& what) {
  T value{};
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("invalid " + what + " \"" + text + "\"");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw ConfigError(what + " must be finite");
  }
  return value;
}

}  // namespace

std::vector<double> GridSpec::values() const {
  std::vector<double> out;
  if (points == 1) return {from};
  for (std::size_t i = 0; i < points; ++i) {
    out.push_back(from + (to - from) * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  return out;
}

EntanglementOptions RunConfig::entanglement_options() const {
  EntanglementOptions opts;
  opts.alternating.seed = seed;
  if (tol) opts.tol_ent = *tol;
  return opts;
}

void add_param(ParamMap& params, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects k=v, got \"" + kv + "\"");
  params[trim(kv.substr(0, eq))] = parse_number<double>(trim(kv.substr(eq + 1)), "parameter value");
}

GridSpec parse_grid(const std::string& text) {
  const auto parts = split_list(text, ':');
  if (parts.size() != 3) throw ConfigError("--g-grid expects a:b:N, got \"" + text + "\"");
  GridSpec g{parse_number<double>(parts[0], "grid start"), parse_number<double>(parts[1], "grid end"),
             parse_number<std::size_t>(parts[2], "grid size")};
  if (g.points == 0) throw ConfigError("grid needs at least one point");
  if (g.points == 1 && g.from != g.to) throw ConfigError("a one-point grid needs a = b");
  if (g.from < 0.0 || g.to < 0.0) throw ConfigError("grid values must be non-negative");
  return g;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split_list(text, ',')) out.push_back(parse_number<double>(part, "number"));
  if (out.empty()) throw ConfigError("empty number list");
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split_list(text, ',')) out.push_back(parse_number<int>(part, "integer"));
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

std::vector<std::size_t> parse_indices(const std::string& text, std::size_t dimension) {
  std::vector<std::size_t> out;
  const std::string s = trim(text);
  if (s == "all") {
    for (std::size_t j = 0; j < dimension; ++j) out.push_back(j);
    return out;
  }
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const auto first = parse_number<std::size_t>(trim(s.substr(0, dots)), "index");
    const auto last = parse_number<std::size_t>(trim(s.substr(dots + 2)), "index");
    if (last < first) throw ConfigError("index range \"" + s + "\" is empty");
    for (std::size_t j = first; j <= last; ++j) out.push_back(j);
  } else {
    for (const auto& part : split_list(s, ',')) out.push_back(parse_number<std::size_t>(part, "index"));
  }
  if (out.empty()) throw ConfigError("empty index list");
  for (std::size_t j : out) {
    if (j >= dimension) {
      throw ConfigError("index " + std::to_string(j) + " out of range for dimension " + std::to_string(dimension));
    }
  }
  return out;
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  throw ConfigError("--format must be json or csv");
}

SpinModel load_model(const RunConfig& config) {
  SpinModel model;
  bool builtin = false;
  for (const auto& info : builtin_models()) builtin |= info.name == config.model;
  if (builtin) {
    model = make_builtin(config.model, config.params);
  } else {
    if (!std::filesystem::exists(config.model)) {
      throw ConfigError("unknown model \"" + config.model + "\" (not a built-in name or an existing file)");
    }
    if (!config.params.empty()) throw ConfigError("--param applies to built-in models only");
    model = load_model_file(config.model);
  }
  if (config.bipartition) model = group_sites(model, parse_bipartition(model, *config.bipartition));
  return model;
}

}  // namespace frustra::cli
