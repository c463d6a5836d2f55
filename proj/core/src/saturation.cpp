#include "frustra/saturation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "frustra/error.hpp"
#include "frustra/parallel.hpp"

namespace frustra {

SchmidtSplitting schmidt_splitting(const SpinModel& model, double gamma) {
  if (model.num_sites() != 2) {
    throw Error(ErrorKind::NotBipartite, "model " + model.name + " has " + std::to_string(model.num_sites()) +
                                             " sites; group it into two parties first");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw Error(ErrorKind::InvalidArgument, "gamma must be positive");
  const EigenDecomposition eig = hermitian_eig(build_dense(model));
  const PureState ground = PureState::normalized(eig.vectors.col(0), model.dims);
  const SchmidtDecomposition sd = schmidt(ground, {{0}, {1}});

  const ComplexVector a0 = sd.left.col(0);
  const ComplexMatrix projector = a0 * a0.adjoint();
  OperatorTerm local{-gamma, {{0, projector}}};
  OperatorTerm compensation{gamma, {{0, projector}}};
  std::vector<OperatorTerm> interaction = model.terms;
  interaction.push_back(std::move(compensation));

  SchmidtSplitting out{Splitting::from_terms(model, {std::move(local)}, std::move(interaction))};
  out.gamma = gamma;
  out.a0 = a0;
  out.schmidt_coefficients = sd.coefficients;
  out.degenerate_schmidt =
      sd.coefficients.size() > 1 && sd.coefficients(0) - sd.coefficients(1) <= tolerance::kStructural;
  return out;
}

ExcessDecomposition excess_decomposition(const Splitting& s, const FrustrationReport& report,
                                         const EntanglementOptions& opts) {
  const ProofStepDiagnostics steps = proof_step_check(s, report, opts);
  ExcessDecomposition d;
  d.ef_bound = *report.ef_bound;
  d.entanglement = report.entanglement;
  d.discarded_weight = steps.discarded_weight;
  d.overshoot_local =
      (report.local_frustration - d.discarded_weight * report.delta_e_ent) / report.delta_e_ent;
  d.overshoot_interaction = report.interaction_frustration / report.delta_e_ent;
  d.entanglement_gap = d.discarded_weight - report.entanglement;
  return d;
}

ExcessDecomposition excess_decomposition(const Splitting& s, const EntanglementOptions& opts) {
  return excess_decomposition(s, analyze_ground(s, opts), opts);
}

SaturationSweep saturation_sweep(const SpinModel& model, const std::vector<double>& gammas,
                                 const EntanglementOptions& opts, int jobs) {
  if (gammas.empty()) throw Error(ErrorKind::InvalidArgument, "gamma list is empty");
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (!(gammas[i] >= kMinimumGamma) || !std::isfinite(gammas[i])) {
      throw Error(ErrorKind::InvalidArgument, "gamma values must be finite and at least 1e-6");
    }
    if (i > 0 && !(gammas[i] < gammas[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "gamma values must be strictly descending");
    }
  }
  std::vector<std::optional<SaturationRecord>> slots(gammas.size());
  parallel_for(gammas.size(), jobs, [&](std::size_t i) {
    const SchmidtSplitting ss = schmidt_splitting(model, gammas[i]);
    FrustrationReport report = analyze_ground(ss.splitting, opts);
    SaturationRecord rec{gammas[i], std::move(report)};
    rec.degenerate_schmidt = ss.degenerate_schmidt;
    rec.unreliable = rec.report.E_f < tolerance::kStructural * rec.report.scale;
    if (rec.report.ef_bound) {
      rec.excess = *rec.report.ef_bound - rec.report.entanglement;
      rec.interaction_term = rec.report.interaction_frustration / rec.report.delta_e_ent;
    }
    slots[i] = std::move(rec);
  });
  SaturationSweep out;
  out.gammas = gammas;
  for (auto& slot : slots) out.records.push_back(std::move(*slot));
  return out;
}

}  // namespace frustra
