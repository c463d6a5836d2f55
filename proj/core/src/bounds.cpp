#include "frustra/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frustra/error.hpp"
#include "frustra/parallel.hpp"

namespace frustra {

namespace {

double expectation(const ComplexMatrix& h, const ComplexVector& v) { return v.dot(h * v).real(); }

// Indices [first, last) of the eigenvalue cluster containing k.
std::pair<Eigen::Index, Eigen::Index> cluster_around(const RealVector& values, Eigen::Index k, double tol) {
  Eigen::Index first = k;
  Eigen::Index last = k + 1;
  while (first > 0 && values(first) - values(first - 1) < tol) --first;
  while (last < values.size() && values(last) - values(last - 1) < tol) ++last;
  return {first, last};
}

ComplexVector pick_ground_vector(const EigenDecomposition& eig, double tol,
                                 const std::optional<ComplexVector>& reference) {
  const auto [first, last] = cluster_around(eig.values, 0, tol);
  ComplexVector ground = eig.vectors.col(0);
  if (!reference || last - first < 2) return ground;
  if (reference->size() != eig.vectors.rows()) {
    throw Error(ErrorKind::InvalidArgument, "reference vector has the wrong dimension");
  }
  const auto block = eig.vectors.middleCols(first, last - first);
  ComplexVector projected = block * (block.adjoint() * *reference);
  const double norm = projected.norm();
  if (norm < 1e-6) return ground;
  projected /= norm;
  fix_phase(projected);
  return projected;
}

}  // namespace

double energy_scale(const RealVector& spectrum) { return std::max(1.0, spectrum.cwiseAbs().maxCoeff()); }

FrustrationReport analyze_ground(const Splitting& s, const EntanglementOptions& opts,
                                 const std::optional<ComplexVector>& reference) {
  const ComplexMatrix h = s.dense_total();
  const EigenDecomposition eig = hermitian_eig(h);
  const double scale = energy_scale(eig.values);
  const double tol = tolerance::kStructural * scale;
  const LocalSpectrum levels = local_spectrum(s);
  const InteractionExtremes inter = interaction_extremes(s);

  FrustrationReport r{PureState::normalized(pick_ground_vector(eig, tol, reference), s.model().dims)};
  r.scale = scale;
  r.E0 = eig.values(0);
  r.degenerate_ground = eig.values.size() > 1 && eig.values(1) - eig.values(0) <= tol;
  r.E0_L = levels.product_basis.front().energy;
  r.E0_I = inter.ground;
  r.E_f = r.E0 - r.E0_L - r.E0_I;
  r.delta_e_ent = levels.delta_e_ent;
  r.E_I_tot = inter.total;

  const ComplexVector& g = r.ground_state.amplitudes();
  r.local_frustration = expectation(s.dense_local(), g) - r.E0_L;
  r.interaction_frustration = expectation(s.dense_interaction(), g) - r.E0_I;

  r.entanglement_detail = geometric_measure(r.ground_state, opts.alternating);
  r.entanglement = r.entanglement_detail.value;

  if (r.delta_e_ent > tol) {
    r.ef_bound = r.E_f / r.delta_e_ent;
    r.ratio_bound = r.E_I_tot / r.delta_e_ent;
  } else {
    r.undefined_reason = kUndefinedBoundReason;
  }
  return r;
}

ProofStepDiagnostics proof_step_check(const Splitting& s, const FrustrationReport& report,
                                      const EntanglementOptions& opts) {
  if (!report.ef_bound) throw Error(ErrorKind::UndefinedBound, kUndefinedBoundReason);
  const LocalSpectrum levels = local_spectrum(s);
  const double threshold = report.E0_L + report.delta_e_ent - tolerance::kStructural * report.scale;
  const ComplexVector alpha = levels.to_product_amplitudes(report.ground_state.amplitudes());

  ProofStepDiagnostics d;
  d.bound = *report.ef_bound;
  ComplexVector truncated = ComplexVector::Zero(alpha.size());
  for (std::size_t k = 0; k < levels.dimension(); ++k) {
    if (levels.energies_by_index[k] < threshold) {
      d.below_threshold.push_back(k);
      const auto i = static_cast<Eigen::Index>(k);
      truncated(i) = alpha(i);
      d.retained_weight += std::norm(alpha(i));
    }
  }
  d.retained_weight = std::min(d.retained_weight, 1.0);
  d.discarded_weight = 1.0 - d.retained_weight;

  if (d.retained_weight > 1e-12) {
    const PureState direction = PureState::normalized(levels.from_product_amplitudes(truncated), levels.dims);
    d.truncated_entanglement = geometric_measure(direction, opts.alternating).value;
  }
  d.truncated_is_product = d.truncated_entanglement <= tolerance::kStructural;
  d.weight_within_bound = d.discarded_weight <= d.bound + tolerance::kStructural;
  d.entanglement_within_discarded = report.entanglement <= d.discarded_weight + opts.tol_ent;
  return d;
}

bool ProductSubspace::contains(std::size_t index) const {
  return std::find(members.begin(), members.end(), index) != members.end();
}

ProductSubspace subspace_through(const LocalSpectrum& levels, std::span<const int> configuration, std::size_t site) {
  if (site >= levels.dims.size() || configuration.size() != levels.dims.size()) {
    throw Error(ErrorKind::InvalidArgument, "configuration does not match the local spectrum");
  }
  ProductSubspace k;
  k.varying_site = site;
  k.fixed_configuration.assign(configuration.begin(), configuration.end());
  std::vector<int> config = k.fixed_configuration;
  k.fixed_configuration[site] = -1;
  for (int level = 0; level < levels.dims[site]; ++level) {
    config[site] = level;
    const std::size_t index = levels.index_of(config);
    k.members.push_back(index);
    k.member_energies.push_back(levels.energies_by_index[index]);
  }
  return k;
}

std::vector<ProductSubspace> enumerate_product_subspaces(const LocalSpectrum& levels, std::size_t cap) {
  const std::size_t n = levels.dims.size();
  if (n < 2) throw Error(ErrorKind::InvalidModel, "product subspaces need at least two sites");
  if (n * levels.dimension() > cap) {
    throw Error(ErrorKind::EnumerationCap, "enumerating product subspaces needs " +
                                               std::to_string(n * levels.dimension()) + " members, cap is " +
                                               std::to_string(cap));
  }
  std::vector<ProductSubspace> out;
  for (std::size_t site = 0; site < n; ++site) {
    for (std::size_t index = 0; index < levels.dimension(); ++index) {
      const std::vector<int> config = levels.configuration_of(index);
      if (config[site] != 0) continue;
      out.push_back(subspace_through(levels, config, site));
    }
  }
  return out;
}

double separation_outside(const LocalSpectrum& levels, const ProductSubspace& k, double energy) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t index = 0; index < levels.dimension(); ++index) {
    if (k.contains(index)) continue;
    best = std::min(best, std::abs(energy - levels.energies_by_index[index]));
  }
  return best;
}

DeltaJEnt delta_j_ent(const LocalSpectrum& levels, std::span<const int> configuration) {
  if (configuration.size() != levels.dims.size()) {
    throw Error(ErrorKind::InvalidArgument, "configuration length does not match the number of sites");
  }
  for (std::size_t i = 0; i < configuration.size(); ++i) {
    if (configuration[i] < 0 || configuration[i] >= levels.dims[i]) {
      throw Error(ErrorKind::InvalidArgument, "configuration label out of range at site " + std::to_string(i));
    }
  }
  const double energy = levels.energy_of(configuration);
  DeltaJEnt best;
  best.delta = -1.0;
  for (std::size_t site = 0; site < levels.dims.size(); ++site) {
    ProductSubspace k = subspace_through(levels, configuration, site);
    const double delta = separation_outside(levels, k, energy);
    if (delta > best.delta) {
      best.delta = delta;
      best.chosen = std::move(k);
    }
  }
  return best;
}

namespace {

struct ExcitedContext {
  EigenDecomposition eig;
  LocalSpectrum levels;
  InteractionExtremes inter;
  double scale = 1.0;
  std::vector<int> dims{};
};

ExcitedContext excited_context(const Splitting& s) {
  ExcitedContext c{hermitian_eig(s.dense_total()), local_spectrum(s), interaction_extremes(s)};
  c.scale = energy_scale(c.eig.values);
  c.dims = s.model().dims;
  return c;
}

ExcitedBoundReport excited_report(const ExcitedContext& c, std::size_t j, const EntanglementOptions& opts) {
  const auto dim = static_cast<std::size_t>(c.eig.values.size());
  if (j >= dim) {
    throw Error(ErrorKind::IndexOutOfRange,
                "eigenstate index " + std::to_string(j) + " out of range for dimension " + std::to_string(dim));
  }
  const double tol = tolerance::kStructural * c.scale;
  const auto jj = static_cast<Eigen::Index>(j);
  ExcitedBoundReport r;
  r.j = j;
  r.E_j = c.eig.values(jj);
  const auto [first, last] = cluster_around(c.eig.values, jj, tol);
  r.degenerate_level = last - first > 1;

  const ProductLevel& paired = c.levels.product_basis[j];
  r.E_L_j = paired.energy;
  r.local_configuration = paired.configuration;
  const DeltaJEnt d = delta_j_ent(c.levels, paired.configuration);
  r.delta_j_ent = d.delta;
  r.chosen_subspace = d.chosen;
  r.delta_j_Kperp = separation_outside(c.levels, d.chosen, r.E_j);

  r.interaction_norm = c.inter.spectral_radius;
  r.E_I_max = c.inter.max;
  const double h2 = r.interaction_norm * r.interaction_norm;
  r.precondition_met = r.delta_j_ent > r.interaction_norm;
  r.precondition_30_met = r.delta_j_ent >= r.interaction_norm;
  if (r.precondition_met) {
    const double gap = r.delta_j_ent - r.interaction_norm;
    r.bound_29 = h2 / (gap * gap);
    r.bound_30 = r.bound_29;
  }
  if (r.delta_j_Kperp > tol) r.dk_bound = h2 / (r.delta_j_Kperp * r.delta_j_Kperp);

  const PureState state = PureState::normalized(c.eig.vectors.col(jj), c.dims);
  r.entanglement_detail = geometric_measure(state, opts.alternating);
  r.entanglement = r.entanglement_detail.value;

  const ComplexVector alpha = c.levels.to_product_amplitudes(state.amplitudes());
  Eigen::Index top = 0;
  alpha.cwiseAbs2().maxCoeff(&top);
  r.pairing_ambiguous = std::abs(c.levels.energies_by_index[static_cast<std::size_t>(top)] - r.E_L_j) > tol;
  return r;
}

}  // namespace

ExcitedBoundReport analyze_excited(const Splitting& s, std::size_t j, const EntanglementOptions& opts) {
  return excited_report(excited_context(s), j, opts);
}

std::vector<ExcitedBoundReport> analyze_excited(const Splitting& s, const std::vector<std::size_t>& js,
                                                const EntanglementOptions& opts, int jobs) {
  const ExcitedContext c = excited_context(s);
  std::vector<ExcitedBoundReport> out(js.size());
  parallel_for(js.size(), jobs, [&](std::size_t i) { out[i] = excited_report(c, js[i], opts); });
  return out;
}

}  // namespace frustra
