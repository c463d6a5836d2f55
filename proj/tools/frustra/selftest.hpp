#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "config.hpp"

namespace frustra::cli {

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::string detail{};

  bool passed() const { return failures == 0; }
};

SuiteResult suite_bounds(std::uint64_t seed, std::size_t trials_per_dim, int jobs);
SuiteResult suite_saturation(std::uint64_t seed, std::size_t instances, int jobs);
SuiteResult suite_theorem(std::uint64_t seed, std::size_t trials, const std::vector<int>& dims,
                          const std::vector<double>& norms, int jobs);
SuiteResult suite_excited(std::uint64_t seed, std::size_t models, int jobs);
SuiteResult suite_measure(std::uint64_t seed, std::size_t states, int jobs);
SuiteResult suite_norms(std::uint64_t seed, std::size_t matrices, int jobs);

/// Every suite with its default size, or config.trials for each when given.
std::vector<SuiteResult> run_selftest(const RunConfig& config);

}  // namespace frustra::cli
