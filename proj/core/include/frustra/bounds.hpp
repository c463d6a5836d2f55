#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "frustra/entanglement.hpp"
#include "frustra/hamiltonian.hpp"

namespace frustra {

struct EntanglementOptions {
  AlternatingOptions alternating;
  /// Slack granted to optimizer-based entanglement values in bound checks.
  double tol_ent = 1e-6;
};

inline constexpr const char* kUndefinedBoundReason = "delta_e_ent = 0";

/// max(1, largest |eigenvalue| of H); the unit for structural tolerances.
double energy_scale(const RealVector& spectrum);

struct FrustrationReport {
  PureState ground_state;
  double E0 = 0.0;
  double E0_L = 0.0;
  double E0_I = 0.0;
  double E_f = 0.0;
  double delta_e_ent = 0.0;
  double E_I_tot = 0.0;
  double entanglement = 0.0;
  GeometricMeasureResult entanglement_detail{};
  std::optional<double> ef_bound{};
  std::optional<double> ratio_bound{};
  /// Set whenever a bound is absent.
  std::string undefined_reason{};
  double local_frustration = 0.0;
  double interaction_frustration = 0.0;
  bool degenerate_ground = false;
  double scale = 1.0;
};

/// Ground-state frustration analysis of a splitting. With a degenerate ground
/// level the solver's first ground vector is used, unless `reference` is
/// given: then the reference projected onto the ground eigenspace is used
/// (falling back to the first vector if that projection vanishes).
FrustrationReport analyze_ground(const Splitting& s, const EntanglementOptions& opts = {},
                                 const std::optional<ComplexVector>& reference = std::nullopt);

struct ProofStepDiagnostics {
  /// Product-basis indices with E^L below E0_L + delta_e_ent.
  std::vector<std::size_t> below_threshold;
  double retained_weight = 0.0;  // sum of |alpha|^2 over below_threshold
  double discarded_weight = 0.0;
  double truncated_entanglement = 0.0;
  double bound = 0.0;  // E_f / delta_e_ent
  bool truncated_is_product = false;
  bool weight_within_bound = false;
  bool entanglement_within_discarded = false;

  bool all_hold() const { return truncated_is_product && weight_within_bound && entanglement_within_discarded; }
};

/// Throws UndefinedBound when the report has no ef_bound.
ProofStepDiagnostics proof_step_check(const Splitting& s, const FrustrationReport& report,
                                      const EntanglementOptions& opts = {});

/// Span of the product eigenstates of H_L that differ only at one site.
struct ProductSubspace {
  std::size_t varying_site = 0;
  /// Labels of every site; the entry at varying_site is -1.
  std::vector<int> fixed_configuration;
  /// Lexicographic product-basis indices, ordered by the varying label.
  std::vector<std::size_t> members;
  std::vector<double> member_energies;

  bool contains(std::size_t index) const;
};

inline constexpr std::size_t kEnumerationCap = 1'000'000;

/// Every product subspace, grouped by varying site then by fixed
/// configuration in lexicographic order. Throws EnumerationCap when the total
/// member count n * D exceeds `cap`.
std::vector<ProductSubspace> enumerate_product_subspaces(const LocalSpectrum& levels,
                                                         std::size_t cap = kEnumerationCap);

/// The product subspace through `configuration` that varies `site`.
ProductSubspace subspace_through(const LocalSpectrum& levels, std::span<const int> configuration, std::size_t site);

/// min over product-basis states outside `k` of |energy - E^L_k|; +inf if none.
double separation_outside(const LocalSpectrum& levels, const ProductSubspace& k, double energy);

struct DeltaJEnt {
  double delta = 0.0;
  ProductSubspace chosen;
};

/// Max over the subspaces containing the configuration of the min energy
/// distance to states outside; ties go to the lowest varying site.
DeltaJEnt delta_j_ent(const LocalSpectrum& levels, std::span<const int> configuration);

struct ExcitedBoundReport {
  std::size_t j = 0;
  double E_j = 0.0;
  double E_L_j = 0.0;
  std::vector<int> local_configuration;
  ProductSubspace chosen_subspace;
  double delta_j_ent = 0.0;
  double delta_j_Kperp = 0.0;
  double interaction_norm = 0.0;  // ||H_I||_op
  double E_I_max = 0.0;           // largest eigenvalue of H_I
  std::optional<double> bound_29;
  std::optional<double> bound_30;
  /// ||H_I||^2 / delta_j_Kperp^2.
  std::optional<double> dk_bound;
  double entanglement = 0.0;
  GeometricMeasureResult entanglement_detail{};
  bool precondition_met = false;
  bool precondition_30_met = false;
  /// The product eigenstate with the largest overlap lies outside the energy
  /// cluster of the index-paired one.
  bool pairing_ambiguous = false;
  bool degenerate_level = false;
};

/// Throws IndexOutOfRange when j >= D.
ExcitedBoundReport analyze_excited(const Splitting& s, std::size_t j, const EntanglementOptions& opts = {});

/// Shares one diagonalization across all requested indices; output follows
/// the order of `js`.
std::vector<ExcitedBoundReport> analyze_excited(const Splitting& s, const std::vector<std::size_t>& js,
                                                const EntanglementOptions& opts = {}, int jobs = 1);

}  // namespace frustra
