#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "frustra/spectra.hpp"

namespace frustra {

enum class Pauli { X, Y, Z };

/// A single-site operator: a Pauli matrix (qubit sites only) or an explicit
/// d x d Hermitian matrix.
using LocalOperator = std::variant<Pauli, ComplexMatrix>;

struct Factor {
  std::size_t site = 0;
  LocalOperator op;
};

/// coefficient * (factor_1 (x) factor_2 (x) ...), identity on untouched sites.
struct OperatorTerm {
  double coefficient = 0.0;
  std::vector<Factor> factors;

  std::size_t degree() const { return factors.size(); }
};

struct SpinModel {
  std::string name;
  std::vector<int> dims;
  std::vector<OperatorTerm> terms;
  /// Optional site labels (used by bipartition specs); empty means "0", "1", ...
  std::vector<std::string> labels;

  std::size_t num_sites() const { return dims.size(); }
  std::string label(std::size_t site) const;
};

/// Partition of a model's sites into ordered groups ("parties").
using SiteGroups = std::vector<std::vector<std::size_t>>;

inline constexpr std::size_t kDefaultDimensionCap = 4096;

/// FRUSTRA_DIM_CAP if set to a positive integer, otherwise 4096.
std::size_t default_dimension_cap();

/// Product of local dimensions; throws DimensionCap when it exceeds `cap`.
std::size_t total_dimension(std::span<const int> dims, std::size_t cap = default_dimension_cap());

ComplexMatrix pauli_matrix(Pauli p);
ComplexMatrix local_matrix(const LocalOperator& op, int dim);

/// Throws InvalidModel / NonHermitianTerm / DimensionCap.
void validate(const SpinModel& model, std::size_t cap = default_dimension_cap());

ComplexMatrix build_dense(const SpinModel& model, std::size_t cap = default_dimension_cap());
ComplexMatrix build_dense(std::span<const OperatorTerm> terms, std::span<const int> dims,
                          std::size_t cap = default_dimension_cap());

/// Merges each group of sites into a single site whose dimension is the
/// product of the group's dimensions. Terms are rewritten so that factors on
/// the same group become one explicit matrix; the amplitude ordering of the
/// result follows the group order.
SpinModel group_sites(const SpinModel& model, const SiteGroups& groups);

/// Parses "A|BC" or "0,2|1" into two groups of site indices, matching labels.
SiteGroups parse_bipartition(const SpinModel& model, const std::string& text);

struct ByLocalityDegree {};

struct ExplicitAssignment {
  std::vector<std::size_t> local;
  std::vector<std::size_t> interaction;
};

using SplitPolicy = std::variant<ByLocalityDegree, ExplicitAssignment>;

/// H = H_L + H_I with H_L a sum of single-site terms. Immutable once built.
class Splitting {
 public:
  /// Local terms must have degree <= 1; a degree-0 (constant) term is
  /// attributed to site 0.
  static Splitting from_terms(SpinModel model, std::vector<OperatorTerm> local,
                              std::vector<OperatorTerm> interaction);

  const SpinModel& model() const { return model_; }
  const std::vector<OperatorTerm>& local_terms() const { return local_; }
  const std::vector<OperatorTerm>& interaction_terms() const { return interaction_; }
  /// H_j for every site (zero matrix for sites without local terms).
  const std::vector<ComplexMatrix>& per_site_local() const { return per_site_; }

  ComplexMatrix dense_total() const;
  ComplexMatrix dense_local() const;
  ComplexMatrix dense_interaction() const;

 private:
  Splitting() = default;

  SpinModel model_;
  std::vector<OperatorTerm> local_;
  std::vector<OperatorTerm> interaction_;
  std::vector<ComplexMatrix> per_site_;
};

Splitting split(const SpinModel& model, const SplitPolicy& policy = ByLocalityDegree{});

/// ||dense(H_L) + dense(H_I) - dense(H)||_F.
double rebuild_residual(const Splitting& s);

struct SiteSpectrum {
  RealVector values;
  ComplexMatrix vectors;
  double gap = 0.0;
};

struct ProductLevel {
  std::vector<int> configuration;
  std::size_t index = 0;  // lexicographic position, site 0 most significant
  double energy = 0.0;
};

/// Eigenstructure of H_L = sum_j H_j.
struct LocalSpectrum {
  std::vector<int> dims;
  std::vector<SiteSpectrum> per_site;
  std::vector<double> gaps;
  double delta_e_ent = 0.0;
  /// All product eigenstates sorted by ascending energy (ties by index).
  std::vector<ProductLevel> product_basis;
  /// E^L for each lexicographic index.
  std::vector<double> energies_by_index;

  std::size_t dimension() const { return product_basis.size(); }
  std::size_t index_of(std::span<const int> configuration) const;
  std::vector<int> configuration_of(std::size_t index) const;
  double energy_of(std::span<const int> configuration) const;
  /// Energy of the product state with the given lexicographic index.
  double energy_at(std::size_t index) const;
  ComplexVector product_vector(std::span<const int> configuration) const;
  /// Amplitudes <E^L_config|psi>, indexed lexicographically.
  ComplexVector to_product_amplitudes(const ComplexVector& psi) const;
  /// Inverse of to_product_amplitudes.
  ComplexVector from_product_amplitudes(const ComplexVector& amplitudes) const;
};

LocalSpectrum local_spectrum(const Splitting& s);

struct InteractionExtremes {
  double ground = 0.0;           // E^I_0
  double max = 0.0;              // E^I_max, largest eigenvalue
  double total = 0.0;            // E^I_tot = E^I_max - E^I_0
  double spectral_radius = 0.0;  // max |eigenvalue| = ||H_I||_op
};

InteractionExtremes interaction_extremes(const Splitting& s);

}  // namespace frustra
