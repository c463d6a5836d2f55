#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "frustra/error.hpp"
#include "frustra/perturbation.hpp"
#include "frustra/random.hpp"

namespace frustra::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitComputation = 3;

/// Exit code for a library error: bad input is a configuration error,
/// everything else a computation error.
int exit_code_for(ErrorKind kind);

/// Splitting selected by config.split for an already loaded model.
Splitting make_splitting(const SpinModel& model, const RunConfig& config);

int cmd_analyze(const RunConfig& config, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out);
int cmd_excited(const RunConfig& config, std::ostream& out);
int cmd_saturate(const RunConfig& config, std::ostream& out);
int cmd_perturb(const RunConfig& config, std::ostream& out);
int cmd_selftest(const RunConfig& config, std::ostream& out);
int cmd_list_models(const RunConfig& config, std::ostream& out);

/// Random Hermitian trial t: B Gaussian of dimension dims[t mod |dims|], C
/// rescaled to norms[(t / |dims|) mod |norms|], a = ground of A, beta = upper
/// half of B's spectrum. Depends only on (seed, t).
struct PerturbationTrial {
  std::size_t trial = 0;
  int dim = 0;
  double norm_c = 0.0;
  PerturbationInstance instance;
};

PerturbationTrial make_perturbation_trial(std::uint64_t seed, std::size_t trial, const std::vector<int>& dims,
                                          const std::vector<double>& norms);

/// Generator seeded from (seed, stream, index) so independent draws never share state.
Rng seeded_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace frustra::cli
