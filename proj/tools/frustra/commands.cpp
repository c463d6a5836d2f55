#include "commands.hpp"

#include <cstdio>
#include <iomanip>
#include <optional>

#include "frustra/error.hpp"
#include "frustra/model_json.hpp"
#include "frustra/models.hpp"
#include "frustra/parallel.hpp"
#include "frustra/saturation.hpp"
#include "selftest.hpp"
#include "serialize.hpp"

namespace frustra::cli {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidModel:
    case ErrorKind::InvalidAssignment:
    case ErrorKind::InvalidBipartition:
    case ErrorKind::NonHermitianTerm:
    case ErrorKind::NotBipartite:
    case ErrorKind::IndexOutOfRange:
      return kExitConfig;
    default:
      return kExitComputation;
  }
}

Rng seeded_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

Splitting make_splitting(const SpinModel& model, const RunConfig& config) {
  const std::string& policy = config.split;
  if (policy == "default") return split(model);
  if (policy.rfind("file:", 0) == 0) return split(model, load_assignment_file(policy.substr(5)));
  if (policy.rfind("schmidt:", 0) == 0) {
    std::vector<double> gamma = parse_doubles(policy.substr(8));
    if (gamma.size() != 1) throw ConfigError("--split schmidt:GAMMA takes one value");
    return schmidt_splitting(model, gamma[0]).splitting;
  }
  throw ConfigError("--split must be default, file:PATH or schmidt:GAMMA");
}

namespace {

const std::vector<std::string> kReportColumns = {
    "E0",          "E0_L",     "E0_I",          "E_f",          "delta_e_ent",      "E_I_tot",
    "entanglement", "ef_bound", "ratio_bound", "local_frustration", "interaction_frustration", "degenerate_ground"};

std::vector<std::string> report_cells(const FrustrationReport& r) {
  return {csv_number(r.E0),
          csv_number(r.E0_L),
          csv_number(r.E0_I),
          csv_number(r.E_f),
          csv_number(r.delta_e_ent),
          csv_number(r.E_I_tot),
          csv_number(r.entanglement),
          csv_number(r.ef_bound),
          csv_number(r.ratio_bound),
          csv_number(r.local_frustration),
          csv_number(r.interaction_frustration),
          r.degenerate_ground ? "true" : "false"};
}

void write_json(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

}  // namespace

int cmd_analyze(const RunConfig& config, std::ostream& out) {
  const SpinModel model = load_model(config);
  const Splitting s = make_splitting(model, config);
  const EntanglementOptions opts = config.entanglement_options();
  const FrustrationReport r = analyze_ground(s, opts);
  if (config.format_or(Format::Json) == Format::Csv) {
    CsvWriter csv(out, kReportColumns);
    csv.row(report_cells(r));
    return kExitOk;
  }
  json doc = {{"model", model.name}, {"sites", model.dims}, {"split", config.split}};
  if (!model.labels.empty()) doc["labels"] = model.labels;
  doc.update(to_json(r));
  if (r.ef_bound) {
    doc["proof_steps"] = to_json(proof_step_check(s, r, opts));
    doc["excess_decomposition"] = to_json(excess_decomposition(s, r, opts));
  } else {
    doc["proof_steps"] = nullptr;
    doc["excess_decomposition"] = nullptr;
  }
  write_json(out, doc);
  return kExitOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
  if (config.model != "ising2") throw ConfigError("sweep covers the two-spin Ising model; use --model ising2");
  if (!config.params.empty()) throw ConfigError("sweep takes its g values from --g-grid, not --param");
  const std::vector<double> grid = config.grid.values();
  const EntanglementOptions opts = config.entanglement_options();

  struct Row {
    double g = 0.0;
    double entanglement = 0.0;
    std::optional<double> fb_sym, fb_asym;
    IsingClosedForm cf;
  };
  std::vector<Row> rows(grid.size());
  parallel_for(grid.size(), config.jobs, [&](std::size_t i) {
    const double g = grid[i];
    std::optional<ComplexVector> reference;
    if (grid.size() > 1) {
      const double neighbour = grid[i + 1 < grid.size() ? i + 1 : i - 1];
      reference = hermitian_eig(build_dense(ising2(neighbour))).vectors.col(0);
    }
    const SpinModel model = ising2(g);
    const FrustrationReport sym = analyze_ground(split(model), opts, reference);
    const FrustrationReport asym = analyze_ground(split(model, ising2_asymmetric_assignment()), opts, reference);
    rows[i] = {g, sym.entanglement, sym.ef_bound, asym.ef_bound, ising2_closed_form(g)};
  });

  auto deviation = [](const std::optional<double>& a, const std::optional<double>& b) -> std::optional<double> {
    if (!a || !b) return std::nullopt;
    return std::abs(*a - *b);
  };
  if (config.format_or(Format::Csv) == Format::Json) {
    json doc = json::array();
    for (const Row& r : rows) {
      doc.push_back({{"g", r.g},
                     {"entanglement", r.entanglement},
                     {"ef_bound_symmetric", optional_number(r.fb_sym)},
                     {"ef_bound_asymmetric", optional_number(r.fb_asym)},
                     {"closed_form_gse", r.cf.entanglement},
                     {"closed_form_fb", optional_number(r.cf.ef_bound_symmetric)},
                     {"closed_form_fb2", optional_number(r.cf.ef_bound_asymmetric)},
                     {"abs_dev_gse", std::abs(r.entanglement - r.cf.entanglement)},
                     {"abs_dev_fb", optional_number(deviation(r.fb_sym, r.cf.ef_bound_symmetric))},
                     {"abs_dev_fb2", optional_number(deviation(r.fb_asym, r.cf.ef_bound_asymmetric))}});
    }
    write_json(out, doc);
    return kExitOk;
  }
  CsvWriter csv(out, {"g", "entanglement", "ef_bound_symmetric", "ef_bound_asymmetric", "closed_form_gse",
                      "closed_form_fb", "closed_form_fb2", "abs_dev_gse", "abs_dev_fb", "abs_dev_fb2"});
  for (const Row& r : rows) {
    csv.row({csv_number(r.g), csv_number(r.entanglement), csv_number(r.fb_sym), csv_number(r.fb_asym),
             csv_number(r.cf.entanglement), csv_number(r.cf.ef_bound_symmetric),
             csv_number(r.cf.ef_bound_asymmetric), csv_number(std::abs(r.entanglement - r.cf.entanglement)),
             csv_number(deviation(r.fb_sym, r.cf.ef_bound_symmetric)),
             csv_number(deviation(r.fb_asym, r.cf.ef_bound_asymmetric))});
  }
  return kExitOk;
}

int cmd_excited(const RunConfig& config, std::ostream& out) {
  const SpinModel model = load_model(config);
  const Splitting s = make_splitting(model, config);
  const std::vector<std::size_t> js = parse_indices(config.j, total_dimension(model.dims));
  const auto reports = analyze_excited(s, js, config.entanglement_options(), config.jobs);
  if (config.format_or(Format::Json) == Format::Csv) {
    CsvWriter csv(out, {"j", "E_j", "E_L_j", "delta_j_ent", "delta_j_Kperp", "interaction_norm", "E_I_max",
                        "bound_29", "bound_30", "dk_bound", "entanglement", "precondition_met",
                        "pairing_ambiguous"});
    for (const auto& r : reports) {
      csv.row({std::to_string(r.j), csv_number(r.E_j), csv_number(r.E_L_j), csv_number(r.delta_j_ent),
               csv_number(r.delta_j_Kperp), csv_number(r.interaction_norm), csv_number(r.E_I_max),
               csv_number(r.bound_29), csv_number(r.bound_30), csv_number(r.dk_bound), csv_number(r.entanglement),
               r.precondition_met ? "true" : "false", r.pairing_ambiguous ? "true" : "false"});
    }
    return kExitOk;
  }
  json doc = json::array();
  for (const auto& r : reports) doc.push_back(to_json(r));
  write_json(out, doc);
  return kExitOk;
}

int cmd_saturate(const RunConfig& config, std::ostream& out) {
  const SpinModel model = load_model(config);
  const SaturationSweep sweep = saturation_sweep(model, config.gammas, config.entanglement_options(), config.jobs);
  if (config.format_or(Format::Csv) == Format::Json) {
    json doc = json::array();
    for (const auto& rec : sweep.records) doc.push_back(to_json(rec));
    write_json(out, doc);
    return kExitOk;
  }
  CsvWriter csv(out, {"gamma", "E0", "E0_L", "E0_I", "E_f", "delta_e_ent", "ef_bound", "entanglement", "excess",
                      "overshoot_interaction"});
  for (const auto& rec : sweep.records) {
    const FrustrationReport& r = rec.report;
    csv.row({csv_number(rec.gamma), csv_number(r.E0), csv_number(r.E0_L), csv_number(r.E0_I), csv_number(r.E_f),
             csv_number(r.delta_e_ent), csv_number(r.ef_bound), csv_number(r.entanglement), csv_number(rec.excess),
             csv_number(rec.interaction_term)});
  }
  return kExitOk;
}

PerturbationTrial make_perturbation_trial(std::uint64_t seed, std::size_t trial, const std::vector<int>& dims,
                                          const std::vector<double>& norms) {
  if (dims.empty() || norms.empty()) throw ConfigError("--dims and --norms must not be empty");
  PerturbationTrial t;
  t.trial = trial;
  t.dim = dims[trial % dims.size()];
  t.norm_c = norms[(trial / dims.size()) % norms.size()];
  if (t.dim < 2) throw ConfigError("perturbation dimensions must be at least 2");
  if (!(t.norm_c > 0.0)) throw ConfigError("perturbation norms must be positive");
  Rng rng = seeded_rng(seed, 0x7E57, trial);
  const ComplexMatrix b = random_hermitian(t.dim, rng);
  const ComplexMatrix c = random_hermitian_with_norm(t.dim, t.norm_c, rng);
  t.instance = make_hermitian_instance(b, c);
  return t;
}

int cmd_perturb(const RunConfig& config, std::ostream& out) {
  const auto trials = static_cast<std::size_t>(config.trials.value_or(500));
  if (config.trials && *config.trials < 1) throw ConfigError("--trials must be positive");
  struct Outcome {
    PerturbationTrial trial;
    std::optional<PerturbationCheckReport> report;
    std::string error;
  };
  std::vector<Outcome> outcomes(trials);
  parallel_for(trials, config.jobs, [&](std::size_t t) {
    outcomes[t].trial = make_perturbation_trial(config.seed, t, config.dims, config.norms);
    try {
      outcomes[t].report = check_theorem(outcomes[t].trial.instance);
    } catch (const Error& e) {
      outcomes[t].error = e.what();
    }
  });

  std::size_t passed = 0, failed = 0, skipped = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  const bool csv_mode = config.format_or(Format::Json) == Format::Csv;
  std::optional<CsvWriter> csv;
  if (csv_mode) {
    csv.emplace(out, std::vector<std::string>{"trial", "dim", "norm_c", "delta_a", "op_ineq_margin", "dominance_ok",
                                              "chain_ok", "pass"});
  }
  for (const Outcome& o : outcomes) {
    const PerturbationTrial& t = o.trial;
    if (!o.report) {
      ++skipped;
      if (csv_mode) {
        csv->row({std::to_string(t.trial), std::to_string(t.dim), csv_number(t.norm_c),
                  csv_number(t.instance.delta_a), "", "", "", "skipped"});
      } else {
        out << json{{"trial", t.trial}, {"dim", t.dim}, {"norm_c", t.norm_c}, {"skipped", o.error}}.dump() << '\n';
      }
      continue;
    }
    const PerturbationCheckReport& r = *o.report;
    (r.passes() ? passed : failed) += 1;
    worst_margin = std::min(worst_margin, r.op_ineq_margin);
    if (csv_mode) {
      csv->row({std::to_string(t.trial), std::to_string(t.dim), csv_number(t.norm_c), csv_number(t.instance.delta_a),
                csv_number(r.op_ineq_margin), r.dominance_ok ? "true" : "false", r.chain_ok() ? "true" : "false",
                r.passes() ? "true" : "false"});
    } else {
      json line = {{"trial", t.trial}, {"dim", t.dim}, {"norm_c", t.norm_c}, {"delta_a", t.instance.delta_a}};
      line.update(to_json(r));
      out << line.dump() << '\n';
    }
  }
  if (!csv_mode) {
    out << json{{"summary",
                 {{"trials", trials},
                  {"passed", passed},
                  {"failed", failed},
                  {"skipped", skipped},
                  {"worst_margin", passed + failed > 0 ? json(worst_margin) : json(nullptr)}}}}
               .dump()
        << '\n';
  }
  return kExitOk;
}

int cmd_selftest(const RunConfig& config, std::ostream& out) {
  const std::vector<SuiteResult> results = run_selftest(config);
  bool ok = true;
  out << std::left << std::setw(14) << "suite" << std::setw(9) << "trials" << std::setw(10) << "failures"
      << "status  detail\n";
  for (const SuiteResult& r : results) {
    ok &= r.passed();
    out << std::left << std::setw(14) << r.name << std::setw(9) << r.trials << std::setw(10) << r.failures
        << std::setw(8) << (r.passed() ? "PASS" : "FAIL") << r.detail << '\n';
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_list_models(const RunConfig& config, std::ostream& out) {
  if (config.format_or(Format::Csv) == Format::Json) {
    json doc = json::array();
    for (const auto& m : builtin_models()) {
      json params = json::object();
      for (const auto& [name, value] : m.params) params[name] = value;
      doc.push_back({{"name", m.name}, {"description", m.description}, {"params", params}});
    }
    write_json(out, doc);
    return kExitOk;
  }
  CsvWriter csv(out, {"name", "params", "description"});
  for (const auto& m : builtin_models()) {
    std::string params;
    for (const auto& [name, value] : m.params) params += (params.empty() ? "" : " ") + name + "=" + csv_number(value);
    csv.row({m.name, params, "\"" + m.description + "\""});
  }
  return kExitOk;
}

}  // namespace frustra::cli
