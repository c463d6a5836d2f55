#include "serialize.hpp"

#include <cstdio>
#include <stdexcept>

namespace frustra::cli {

json to_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

json to_json(const PureState& psi) { return {{"dims", psi.dims()}, {"amplitudes", to_json(psi.amplitudes())}}; }

json to_json(const GeometricMeasureResult& g) {
  json factors = json::array();
  for (const auto& f : g.maximizer.factors) factors.push_back(to_json(f));
  json out = {{"value", g.value},
              {"overlap_sq", g.overlap_sq},
              {"method", std::string(to_string(g.method))},
              {"converged", g.converged},
              {"parties", g.parties},
              {"maximizer", factors}};
  if (g.method == MeasureMethod::Alternating) {
    out["restarts"] = g.restarts;
    out["iterations"] = g.iterations;
  }
  return out;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json to_json(const FrustrationReport& r) {
  json out = {{"E0", r.E0},
              {"E0_L", r.E0_L},
              {"E0_I", r.E0_I},
              {"E_f", r.E_f},
              {"delta_e_ent", r.delta_e_ent},
              {"E_I_tot", r.E_I_tot},
              {"entanglement", r.entanglement},
              {"entanglement_method", std::string(to_string(r.entanglement_detail.method))},
              {"ef_bound", optional_number(r.ef_bound)},
              {"ratio_bound", optional_number(r.ratio_bound)},
              {"local_frustration", r.local_frustration},
              {"interaction_frustration", r.interaction_frustration},
              {"degenerate_ground", r.degenerate_ground},
              {"scale", r.scale},
              {"ground_state", to_json(r.ground_state)},
              {"entanglement_detail", to_json(r.entanglement_detail)}};
  if (!r.undefined_reason.empty()) out["undefined_reason"] = r.undefined_reason;
  return out;
}

json to_json(const ProofStepDiagnostics& d) {
  return {{"below_threshold", d.below_threshold},
          {"retained_weight", d.retained_weight},
          {"discarded_weight", d.discarded_weight},
          {"truncated_entanglement", d.truncated_entanglement},
          {"bound", d.bound},
          {"truncated_is_product", d.truncated_is_product},
          {"weight_within_bound", d.weight_within_bound},
          {"entanglement_within_discarded", d.entanglement_within_discarded},
          {"all_hold", d.all_hold()}};
}

json to_json(const ProductSubspace& k) {
  return {{"varying_site", k.varying_site},
          {"fixed_configuration", k.fixed_configuration},
          {"members", k.members},
          {"member_energies", k.member_energies}};
}

json to_json(const ExcitedBoundReport& r) {
  return {{"j", r.j},
          {"E_j", r.E_j},
          {"E_L_j", r.E_L_j},
          {"local_configuration", r.local_configuration},
          {"chosen_subspace", to_json(r.chosen_subspace)},
          {"delta_j_ent", r.delta_j_ent},
          {"delta_j_Kperp", r.delta_j_Kperp},
          {"interaction_norm", r.interaction_norm},
          {"E_I_max", r.E_I_max},
          {"bound_29", optional_number(r.bound_29)},
          {"bound_30", optional_number(r.bound_30)},
          {"dk_bound", optional_number(r.dk_bound)},
          {"entanglement", r.entanglement},
          {"entanglement_method", std::string(to_string(r.entanglement_detail.method))},
          {"precondition_met", r.precondition_met},
          {"precondition_30_met", r.precondition_30_met},
          {"pairing_ambiguous", r.pairing_ambiguous},
          {"degenerate_level", r.degenerate_level}};
}

json to_json(const ExcessDecomposition& d) {
  return {{"ef_bound", d.ef_bound},
          {"entanglement", d.entanglement},
          {"discarded_weight", d.discarded_weight},
          {"overshoot_local", d.overshoot_local},
          {"overshoot_interaction", d.overshoot_interaction},
          {"entanglement_gap", d.entanglement_gap}};
}

json to_json(const SaturationRecord& rec) {
  return {{"gamma", rec.gamma},
          {"E0", rec.report.E0},
          {"E0_L", rec.report.E0_L},
          {"E0_I", rec.report.E0_I},
          {"E_f", rec.report.E_f},
          {"delta_e_ent", rec.report.delta_e_ent},
          {"ef_bound", optional_number(rec.report.ef_bound)},
          {"entanglement", rec.report.entanglement},
          {"excess", optional_number(rec.excess)},
          {"overshoot_interaction", optional_number(rec.interaction_term)},
          {"degenerate_schmidt", rec.degenerate_schmidt},
          {"degenerate_ground", rec.report.degenerate_ground},
          {"unreliable", rec.unreliable}};
}

json to_json(const PerturbationCheckReport& r) {
  json chain = json::object();
  for (const NormTriple& t : r.norm_chain) chain[std::string(to_string(t.kind))] = {t.pq, t.pcq, t.c};
  return {{"op_ineq_margin", r.op_ineq_margin},
          {"dominance_ok", r.dominance_ok},
          {"norm_chain", chain},
          {"canonical_cosines", r.canonical_cosines},
          {"scale", r.scale},
          {"pass", r.passes()}};
}

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_number(const std::optional<double>& v) { return v ? csv_number(*v) : std::string(); }

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw std::logic_error("csv row width does not match the header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace frustra::cli
