#pragma once

#include <optional>
#include <vector>

#include "frustra/bounds.hpp"

namespace frustra {

struct SchmidtSplitting {
  Splitting splitting;
  double gamma = 0.0;
  /// Left Schmidt vector of the largest coefficient of the ground state.
  ComplexVector a0{};
  RealVector schmidt_coefficients{};
  /// The two largest Schmidt coefficients agree within 1e-9, so a0 is not unique.
  bool degenerate_schmidt = false;
};

/// H_L = -gamma |a0><a0| on party 0 and H_I = H - H_L. The model must have
/// exactly two sites (group sites first for larger systems).
SchmidtSplitting schmidt_splitting(const SpinModel& model, double gamma);

struct ExcessDecomposition {
  double ef_bound = 0.0;
  double entanglement = 0.0;
  double discarded_weight = 0.0;  // 1 - sum of |alpha|^2 below threshold
  double overshoot_local = 0.0;
  double overshoot_interaction = 0.0;
  double entanglement_gap = 0.0;

  double total() const { return overshoot_local + overshoot_interaction + entanglement_gap; }
};

/// Throws UndefinedBound when delta_e_ent vanishes.
ExcessDecomposition excess_decomposition(const Splitting& s, const EntanglementOptions& opts = {});
ExcessDecomposition excess_decomposition(const Splitting& s, const FrustrationReport& report,
                                         const EntanglementOptions& opts = {});

struct SaturationRecord {
  double gamma = 0.0;
  FrustrationReport report;
  std::optional<double> excess{};
  /// interaction_frustration / delta_e_ent.
  std::optional<double> interaction_term{};
  bool degenerate_schmidt = false;
  /// E_f is below 1e-9 * scale, so ef_bound is dominated by rounding.
  bool unreliable = false;
};

struct SaturationSweep {
  std::vector<double> gammas;
  std::vector<SaturationRecord> records;
};

inline constexpr double kMinimumGamma = 1e-6;

/// Gammas must be strictly descending, positive and at least 1e-6.
SaturationSweep saturation_sweep(const SpinModel& model, const std::vector<double>& gammas,
                                 const EntanglementOptions& opts = {}, int jobs = 1);

}  // namespace frustra
