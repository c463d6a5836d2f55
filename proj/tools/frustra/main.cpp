#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"
#include "frustra/error.hpp"

namespace {

using frustra::cli::RunConfig;

struct RawOptions {
  std::vector<std::string> params;
  std::string format;
  std::string gammas;
  std::string grid;
  std::string dims;
  std::string norms;
};

void add_common(CLI::App* sub, RunConfig& config, RawOptions& raw) {
  sub->add_option("--model", config.model, "Built-in model name or model JSON file");
  sub->add_option("--param", raw.params, "Model parameter k=v (repeatable)");
  sub->add_option("--split", config.split, "default | file:PATH | schmidt:GAMMA");
  sub->add_option("--bipartition", config.bipartition, "Group sites into two parties, e.g. \"B|AC\"");
  sub->add_option("--out", config.out, "Write output to PATH instead of stdout");
  sub->add_option("--format", raw.format, "json | csv");
  sub->add_option("--seed", config.seed, "Random seed");
  sub->add_option("--jobs", config.jobs, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--trials", config.trials, "Trial count for randomized suites");
  sub->add_option("--tol", config.tol, "Entanglement tolerance for bound checks");
}

void finish(RunConfig& config, const RawOptions& raw) {
  for (const auto& kv : raw.params) frustra::cli::add_param(config.params, kv);
  if (!raw.format.empty()) config.format = frustra::cli::parse_format(raw.format);
  if (!raw.gammas.empty()) config.gammas = frustra::cli::parse_doubles(raw.gammas);
  if (!raw.grid.empty()) config.grid = frustra::cli::parse_grid(raw.grid);
  if (!raw.dims.empty()) config.dims = frustra::cli::parse_ints(raw.dims);
  if (!raw.norms.empty()) config.norms = frustra::cli::parse_doubles(raw.norms);
  if (config.tol && !(*config.tol >= 0.0)) throw frustra::cli::ConfigError("--tol must be non-negative");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = frustra::cli;
  CLI::App app{"Frustration and entanglement bounds for small quantum spin systems"};
  app.require_subcommand(1);

  RunConfig config;
  RawOptions raw;
  using Command = std::function<int(const RunConfig&, std::ostream&)>;
  const std::vector<std::tuple<std::string, std::string, Command>> commands = {
      {"analyze", "Ground-state frustration report", cli::cmd_analyze},
      {"sweep", "Two-spin Ising sweep over g with closed-form references", cli::cmd_sweep},
      {"excited", "Excited-state entanglement bounds", cli::cmd_excited},
      {"saturate", "Saturation sweep over gamma for the Schmidt splitting", cli::cmd_saturate},
      {"perturb", "Randomized eigenspace perturbation checks", cli::cmd_perturb},
      {"selftest", "Run every randomized property suite", cli::cmd_selftest},
      {"list-models", "List built-in models", cli::cmd_list_models},
  };
  std::map<CLI::App*, Command> handlers;
  for (const auto& [name, help, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, config, raw);
    if (name == "sweep") sub->add_option("--g-grid", raw.grid, "Grid a:b:N (default 0.01:5:200)");
    if (name == "excited") sub->add_option("--j", config.j, "Eigenstate indices: 3, 0..3, 0,2,5 or all");
    if (name == "saturate") sub->add_option("--gammas", raw.gammas, "Descending gamma list (default 1e-1,1e-2,1e-3)");
    if (name == "perturb" || name == "selftest") {
      sub->add_option("--dims", raw.dims, "Matrix dimensions (default 4,8,16)");
      sub->add_option("--norms", raw.norms, "Perturbation norms (default 0.01,0.1,1)");
    }
    handlers[sub] = fn;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitConfig;
  }

  try {
    finish(config, raw);
    const Command& run = handlers.at(app.get_subcommands().front());
    if (config.out) {
      std::ofstream file(*config.out);
      if (!file) throw cli::ConfigError("cannot open " + *config.out + " for writing");
      const int code = run(config, file);
      file.flush();
      if (!file) {
        std::cerr << "error: failed writing " << *config.out << '\n';
        return cli::kExitComputation;
      }
      return code;
    }
    return run(config, std::cout);
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kExitConfig;
  } catch (const frustra::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitComputation;
  }
}
