#include "frustra/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "frustra/error.hpp"

namespace frustra {

namespace {

std::vector<std::size_t> strides_for(std::span<const int> dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * static_cast<std::size_t>(dims[i]);
  return strides;
}

void check_term_sites(const OperatorTerm& term, std::size_t num_sites, std::size_t term_index) {
  std::vector<bool> seen(num_sites, false);
  for (const Factor& f : term.factors) {
    if (f.site >= num_sites) {
      throw Error(ErrorKind::InvalidModel, "term " + std::to_string(term_index) + " references site " +
                                               std::to_string(f.site) + " but the model has " +
                                               std::to_string(num_sites) + " sites");
    }
    if (seen[f.site]) {
      throw Error(ErrorKind::InvalidModel,
                  "term " + std::to_string(term_index) + " acts on site " + std::to_string(f.site) + " twice");
    }
    seen[f.site] = true;
  }
}

// Adds coefficient * (embedded factors) into `out`, acting column by column.
void accumulate_term(ComplexMatrix& out, const OperatorTerm& term, std::span<const int> dims,
                     std::span<const std::size_t> strides) {
  const auto dim = static_cast<std::size_t>(out.rows());
  if (term.factors.empty()) {
    out.diagonal().array() += Complex(term.coefficient, 0.0);
    return;
  }
  const std::size_t m = term.factors.size();
  std::vector<ComplexMatrix> ops;
  std::vector<std::size_t> sites;
  ops.reserve(m);
  for (const Factor& f : term.factors) {
    ops.push_back(local_matrix(f.op, dims[f.site]));
    sites.push_back(f.site);
  }
  std::vector<int> old_digit(m), new_digit(m);
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t base = col;
    for (std::size_t k = 0; k < m; ++k) {
      old_digit[k] = static_cast<int>((col / strides[sites[k]]) % static_cast<std::size_t>(dims[sites[k]]));
      base -= static_cast<std::size_t>(old_digit[k]) * strides[sites[k]];
    }
    std::fill(new_digit.begin(), new_digit.end(), 0);
    bool done = false;
    while (!done) {
      Complex value(term.coefficient, 0.0);
      std::size_t row = base;
      for (std::size_t k = 0; k < m; ++k) {
        value *= ops[k](new_digit[k], old_digit[k]);
        row += static_cast<std::size_t>(new_digit[k]) * strides[sites[k]];
      }
      if (value != Complex(0.0, 0.0)) {
        out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += value;
      }
      std::size_t k = m;
      while (true) {
        if (k == 0) {
          done = true;
          break;
        }
        --k;
        if (++new_digit[k] < dims[sites[k]]) break;
        new_digit[k] = 0;
      }
    }
  }
}

}  // namespace

std::string SpinModel::label(std::size_t site) const {
  if (site < labels.size()) return labels[site];
  return std::to_string(site);
}

std::size_t default_dimension_cap() {
  if (const char* env = std::getenv("FRUSTRA_DIM_CAP")) {
    char* end = nullptr;
    const long long value = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
  }
  return kDefaultDimensionCap;
}

std::size_t total_dimension(std::span<const int> dims, std::size_t cap) {
  std::size_t total = 1;
  for (int d : dims) {
    if (d < 2) throw Error(ErrorKind::InvalidModel, "local dimensions must be >= 2");
    total *= static_cast<std::size_t>(d);
    if (total > cap) {
      throw Error(ErrorKind::DimensionCap,
                  "total dimension exceeds the cap of " + std::to_string(cap) + " (set FRUSTRA_DIM_CAP to raise it)");
    }
  }
  return total;
}

ComplexMatrix pauli_matrix(Pauli p) {
  ComplexMatrix m(2, 2);
  switch (p) {
    case Pauli::X:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case Pauli::Y:
      m << Complex(0.0, 0.0), Complex(0.0, -1.0), Complex(0.0, 1.0), Complex(0.0, 0.0);
      break;
    case Pauli::Z:
      m << 1.0, 0.0, 0.0, -1.0;
      break;
  }
  return m;
}

ComplexMatrix local_matrix(const LocalOperator& op, int dim) {
  if (const auto* p = std::get_if<Pauli>(&op)) {
    if (dim != 2) throw Error(ErrorKind::InvalidModel, "Pauli operators require a qubit site (d = 2)");
    return pauli_matrix(*p);
  }
  const auto& m = std::get<ComplexMatrix>(op);
  if (m.rows() != dim || m.cols() != dim) {
    throw Error(ErrorKind::InvalidModel, "explicit operator is " + std::to_string(m.rows()) + "x" +
                                             std::to_string(m.cols()) + " on a site of dimension " +
                                             std::to_string(dim));
  }
  return m;
}

void validate(const SpinModel& model, std::size_t cap) {
  if (model.dims.empty()) throw Error(ErrorKind::InvalidModel, "model has no sites");
  total_dimension(model.dims, cap);
  if (!model.labels.empty() && model.labels.size() != model.dims.size()) {
    throw Error(ErrorKind::InvalidModel, "label count does not match site count");
  }
  for (std::size_t t = 0; t < model.terms.size(); ++t) {
    const OperatorTerm& term = model.terms[t];
    if (!std::isfinite(term.coefficient)) {
      throw Error(ErrorKind::InvalidModel, "term " + std::to_string(t) + " has a non-finite coefficient");
    }
    check_term_sites(term, model.dims.size(), t);
    for (const Factor& f : term.factors) {
      const ComplexMatrix m = local_matrix(f.op, model.dims[f.site]);
      if (!m.allFinite() || (m - m.adjoint()).norm() > 1e-12 * std::max(1.0, m.norm())) {
        throw Error(ErrorKind::NonHermitianTerm,
                    "term " + std::to_string(t) + " has a non-Hermitian factor on site " + std::to_string(f.site));
      }
    }
  }
}

ComplexMatrix build_dense(std::span<const OperatorTerm> terms, std::span<const int> dims, std::size_t cap) {
  const std::size_t dim = total_dimension(dims, cap);
  const auto strides = strides_for(dims);
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const OperatorTerm& term : terms) accumulate_term(out, term, dims, strides);
  return out;
}

ComplexMatrix build_dense(const SpinModel& model, std::size_t cap) {
  validate(model, cap);
  return build_dense(model.terms, model.dims, cap);
}

SpinModel group_sites(const SpinModel& model, const SiteGroups& groups) {
  validate(model);
  std::vector<int> owner(model.num_sites(), -1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) throw Error(ErrorKind::InvalidBipartition, "empty site group");
    for (std::size_t site : groups[g]) {
      if (site >= model.num_sites()) {
        throw Error(ErrorKind::InvalidBipartition, "site " + std::to_string(site) + " does not exist");
      }
      if (owner[site] != -1) {
        throw Error(ErrorKind::InvalidBipartition, "site " + model.label(site) + " appears in two groups");
      }
      owner[site] = static_cast<int>(g);
    }
  }
  for (std::size_t site = 0; site < owner.size(); ++site) {
    if (owner[site] == -1) throw Error(ErrorKind::InvalidBipartition, "site " + model.label(site) + " is unassigned");
  }

  SpinModel out;
  out.name = model.name;
  for (const auto& group : groups) {
    int dim = 1;
    std::string label;
    for (std::size_t site : group) {
      dim *= model.dims[site];
      label += model.label(site);
    }
    out.dims.push_back(dim);
    out.labels.push_back(label);
  }
  for (const OperatorTerm& term : model.terms) {
    OperatorTerm merged;
    merged.coefficient = term.coefficient;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto& group = groups[g];
      std::vector<const Factor*> inside;
      for (const Factor& f : term.factors) {
        if (owner[f.site] == static_cast<int>(g)) inside.push_back(&f);
      }
      if (inside.empty()) continue;
      if (group.size() == 1) {
        merged.factors.push_back({g, inside.front()->op});
        continue;
      }
      ComplexMatrix op = ComplexMatrix::Identity(1, 1);
      for (std::size_t site : group) {
        const auto it = std::find_if(inside.begin(), inside.end(), [&](const Factor* f) { return f->site == site; });
        const ComplexMatrix piece = it != inside.end() ? local_matrix((*it)->op, model.dims[site])
                                                       : ComplexMatrix::Identity(model.dims[site], model.dims[site]);
        op = kron(op, piece);
      }
      merged.factors.push_back({g, op});
    }
    out.terms.push_back(std::move(merged));
  }
  return out;
}

SiteGroups parse_bipartition(const SpinModel& model, const std::string& text) {
  const auto bar = text.find('|');
  if (bar == std::string::npos || text.find('|', bar + 1) != std::string::npos) {
    throw Error(ErrorKind::InvalidBipartition, "bipartition must look like \"A|BC\", got \"" + text + "\"");
  }
  bool single_char_labels = true;
  for (std::size_t s = 0; s < model.num_sites(); ++s) single_char_labels &= model.label(s).size() == 1;
  auto lookup = [&](const std::string& token) -> std::size_t {
    for (std::size_t s = 0; s < model.num_sites(); ++s) {
      if (model.label(s) == token) return s;
    }
    throw Error(ErrorKind::InvalidBipartition, "unknown site label \"" + token + "\"");
  };
  auto parse_side = [&](const std::string& side) {
    std::vector<std::size_t> sites;
    if (side.find(',') != std::string::npos || !single_char_labels) {
      std::stringstream ss(side);
      std::string token;
      while (std::getline(ss, token, ',')) {
        if (!token.empty()) sites.push_back(lookup(token));
      }
    } else {
      for (char c : side) sites.push_back(lookup(std::string(1, c)));
    }
    if (sites.empty()) throw Error(ErrorKind::InvalidBipartition, "bipartition side is empty in \"" + text + "\"");
    return sites;
  };
  SiteGroups groups{parse_side(text.substr(0, bar)), parse_side(text.substr(bar + 1))};
  std::vector<int> count(model.num_sites(), 0);
  for (const auto& g : groups) {
    for (std::size_t s : g) ++count[s];
  }
  for (std::size_t s = 0; s < count.size(); ++s) {
    if (count[s] != 1) {
      throw Error(ErrorKind::InvalidBipartition,
                  "site " + model.label(s) + " must appear exactly once in \"" + text + "\"");
    }
  }
  return groups;
}

Splitting Splitting::from_terms(SpinModel model, std::vector<OperatorTerm> local,
                                std::vector<OperatorTerm> interaction) {
  validate(model);
  Splitting s;
  s.per_site_.reserve(model.num_sites());
  for (int d : model.dims) s.per_site_.push_back(ComplexMatrix::Zero(d, d));
  for (std::size_t t = 0; t < local.size(); ++t) {
    const OperatorTerm& term = local[t];
    if (term.degree() > 1) {
      throw Error(ErrorKind::InvalidAssignment,
                  "local term " + std::to_string(t) + " has degree " + std::to_string(term.degree()));
    }
    check_term_sites(term, model.num_sites(), t);
    if (term.factors.empty()) {
      s.per_site_[0].diagonal().array() += Complex(term.coefficient, 0.0);
    } else {
      const Factor& f = term.factors.front();
      s.per_site_[f.site] += term.coefficient * local_matrix(f.op, model.dims[f.site]);
    }
  }
  for (std::size_t t = 0; t < interaction.size(); ++t) check_term_sites(interaction[t], model.num_sites(), t);
  s.model_ = std::move(model);
  s.local_ = std::move(local);
  s.interaction_ = std::move(interaction);
  return s;
}

ComplexMatrix Splitting::dense_total() const { return build_dense(model_); }
ComplexMatrix Splitting::dense_local() const { return build_dense(local_, model_.dims); }
ComplexMatrix Splitting::dense_interaction() const { return build_dense(interaction_, model_.dims); }

Splitting split(const SpinModel& model, const SplitPolicy& policy) {
  std::vector<OperatorTerm> local, interaction;
  if (std::holds_alternative<ByLocalityDegree>(policy)) {
    for (const OperatorTerm& term : model.terms) (term.degree() == 1 ? local : interaction).push_back(term);
    return Splitting::from_terms(model, std::move(local), std::move(interaction));
  }
  const auto& assignment = std::get<ExplicitAssignment>(policy);
  std::vector<int> uses(model.terms.size(), 0);
  auto take = [&](const std::vector<std::size_t>& indices, std::vector<OperatorTerm>& into) {
    for (std::size_t i : indices) {
      if (i >= model.terms.size()) {
        throw Error(ErrorKind::InvalidAssignment, "term index " + std::to_string(i) + " is out of range");
      }
      ++uses[i];
      into.push_back(model.terms[i]);
    }
  };
  take(assignment.local, local);
  take(assignment.interaction, interaction);
  for (std::size_t i = 0; i < uses.size(); ++i) {
    if (uses[i] != 1) {
      throw Error(ErrorKind::InvalidAssignment, "term " + std::to_string(i) + " is assigned " +
                                                    std::to_string(uses[i]) + " times (must be exactly once)");
    }
  }
  for (std::size_t i : assignment.local) {
    if (model.terms[i].degree() > 1) {
      throw Error(ErrorKind::InvalidAssignment, "term " + std::to_string(i) + " has degree " +
                                                    std::to_string(model.terms[i].degree()) +
                                                    " and cannot be local");
    }
  }
  return Splitting::from_terms(model, std::move(local), std::move(interaction));
}

double rebuild_residual(const Splitting& s) {
  return (s.dense_local() + s.dense_interaction() - s.dense_total()).norm();
}

std::size_t LocalSpectrum::index_of(std::span<const int> configuration) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) index = index * static_cast<std::size_t>(dims[i]) + configuration[i];
  return index;
}

std::vector<int> LocalSpectrum::configuration_of(std::size_t index) const {
  std::vector<int> config(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    config[i] = static_cast<int>(index % static_cast<std::size_t>(dims[i]));
    index /= static_cast<std::size_t>(dims[i]);
  }
  return config;
}

double LocalSpectrum::energy_of(std::span<const int> configuration) const {
  double e = 0.0;
  for (std::size_t i = 0; i < dims.size(); ++i) e += per_site[i].values(configuration[i]);
  return e;
}

double LocalSpectrum::energy_at(std::size_t index) const { return energies_by_index.at(index); }

ComplexVector LocalSpectrum::product_vector(std::span<const int> configuration) const {
  ComplexVector v = ComplexVector::Ones(1);
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const ComplexVector col = per_site[i].vectors.col(configuration[i]);
    v = kron(v, col);
  }
  return v;
}

namespace {

// Applies op (d_i x d_i) along axis i of a tensor stored lexicographically.
ComplexVector apply_along_axis(const ComplexVector& in, std::span<const int> dims, std::size_t axis,
                               const ComplexMatrix& op) {
  std::size_t right = 1;
  for (std::size_t k = axis + 1; k < dims.size(); ++k) right *= static_cast<std::size_t>(dims[k]);
  const auto d = static_cast<std::size_t>(dims[axis]);
  const std::size_t left = static_cast<std::size_t>(in.size()) / (d * right);
  ComplexVector out = ComplexVector::Zero(in.size());
  for (std::size_t l = 0; l < left; ++l) {
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        const Complex w = op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (w == Complex(0.0, 0.0)) continue;
        const auto dst = static_cast<Eigen::Index>((l * d + a) * right);
        const auto src = static_cast<Eigen::Index>((l * d + b) * right);
        out.segment(dst, static_cast<Eigen::Index>(right)) += w * in.segment(src, static_cast<Eigen::Index>(right));
      }
    }
  }
  return out;
}

}  // namespace

ComplexVector LocalSpectrum::to_product_amplitudes(const ComplexVector& psi) const {
  ComplexVector out = psi;
  for (std::size_t i = 0; i < dims.size(); ++i) out = apply_along_axis(out, dims, i, per_site[i].vectors.adjoint());
  return out;
}

ComplexVector LocalSpectrum::from_product_amplitudes(const ComplexVector& amplitudes) const {
  ComplexVector out = amplitudes;
  for (std::size_t i = 0; i < dims.size(); ++i) out = apply_along_axis(out, dims, i, per_site[i].vectors);
  return out;
}

LocalSpectrum local_spectrum(const Splitting& s) {
  const SpinModel& model = s.model();
  if (model.num_sites() < 2) {
    throw Error(ErrorKind::InvalidModel, "local spectrum needs at least two sites to define delta_e_ent");
  }
  LocalSpectrum out;
  out.dims = model.dims;
  for (const ComplexMatrix& hj : s.per_site_local()) {
    const EigenDecomposition eig = hermitian_eig(hj);
    SiteSpectrum site{eig.values, eig.vectors, eig.values(1) - eig.values(0)};
    const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
    if (site.gap <= tolerance::kStructural * scale) site.gap = 0.0;
    out.gaps.push_back(site.gap);
    out.per_site.push_back(std::move(site));
  }
  std::vector<double> sorted = out.gaps;
  std::sort(sorted.begin(), sorted.end());
  out.delta_e_ent = sorted[1];

  const std::size_t dim = total_dimension(model.dims);
  out.product_basis.reserve(dim);
  out.energies_by_index.resize(dim);
  for (std::size_t index = 0; index < dim; ++index) {
    ProductLevel level;
    level.configuration = out.configuration_of(index);
    level.index = index;
    level.energy = out.energy_of(level.configuration);
    out.energies_by_index[index] = level.energy;
    out.product_basis.push_back(std::move(level));
  }
  std::stable_sort(out.product_basis.begin(), out.product_basis.end(),
                   [](const ProductLevel& a, const ProductLevel& b) { return a.energy < b.energy; });
  return out;
}

InteractionExtremes interaction_extremes(const Splitting& s) {
  const RealVector values = hermitian_eigenvalues(s.dense_interaction());
  InteractionExtremes out;
  out.ground = values(0);
  out.max = values(values.size() - 1);
  out.total = out.max - out.ground;
  out.spectral_radius = std::max(std::abs(out.ground), std::abs(out.max));
  return out;
}

}  // namespace frustra
