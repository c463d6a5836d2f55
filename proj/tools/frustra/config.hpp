#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frustra/bounds.hpp"
#include "frustra/hamiltonian.hpp"
#include "frustra/models.hpp"

namespace frustra::cli {

/// Invalid command-line input; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv };

struct GridSpec {
  double from = 0.01;
  double to = 5.0;
  std::size_t points = 200;

  std::vector<double> values() const;
};

struct RunConfig {
  std::string model = "ising2";
  ParamMap params;
  /// "default", "file:PATH" or "schmidt:GAMMA".
  std::string split = "default";
  std::optional<std::string> bipartition;
  std::optional<std::string> out;
  std::optional<Format> format;
  std::uint64_t seed = 0x5EED;
  int jobs = 1;
  std::optional<int> trials;
  std::optional<double> tol;
  std::string j = "0";
  std::vector<double> gammas = {1e-1, 1e-2, 1e-3};
  GridSpec grid;
  std::vector<int> dims = {4, 8, 16};
  std::vector<double> norms = {0.01, 0.1, 1.0};

  Format format_or(Format fallback) const { return format.value_or(fallback); }
  EntanglementOptions entanglement_options() const;
};

/// "k=v" into params; rejects a missing '=' or a non-numeric value.
void add_param(ParamMap& params, const std::string& kv);

/// "a:b:N" with N >= 1 (N = 1 requires a = b).
GridSpec parse_grid(const std::string& text);

/// Comma separated doubles.
std::vector<double> parse_doubles(const std::string& text);
std::vector<int> parse_ints(const std::string& text);

/// "3", "0..3" (inclusive), "0,2,5" or "all".
std::vector<std::size_t> parse_indices(const std::string& text, std::size_t dimension);

Format parse_format(const std::string& name);

/// Built-in name or JSON file path, grouped by the bipartition if given.
SpinModel load_model(const RunConfig& config);

}  // namespace frustra::cli
