#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "frustra/hamiltonian.hpp"
#include "frustra/spectra.hpp"

namespace frustra {

/// Normalized state vector over a product of local spaces (site 0 most
/// significant).
class PureState {
 public:
  /// Throws InvalidArgument unless the size matches and the norm is 1 within 1e-10.
  PureState(ComplexVector amplitudes, std::vector<int> dims);

  /// Rescales to unit norm first; throws on a zero vector.
  static PureState normalized(ComplexVector amplitudes, std::vector<int> dims);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t num_sites() const { return dims_.size(); }

 private:
  ComplexVector amplitudes_;
  std::vector<int> dims_;
};

/// psi_1 (x) ... (x) psi_n, one unit vector per party.
struct ProductAnsatz {
  std::vector<ComplexVector> factors;

  ComplexVector to_vector() const;
};

enum class MeasureMethod { SchmidtExact, Alternating, BruteForce };

std::string_view to_string(MeasureMethod m);

/// E(psi) = 1 - max |<psi|psi_1 (x) ... (x) psi_n>|^2 over the given parties.
struct GeometricMeasureResult {
  double value = 0.0;
  double overlap_sq = 1.0;
  ProductAnsatz maximizer;
  SiteGroups parties;
  MeasureMethod method = MeasureMethod::SchmidtExact;
  int restarts = 0;
  int iterations = 0;
  bool converged = true;
  /// Overlap after each sweep of the winning alternating run.
  std::vector<double> overlap_trace;
};

struct SchmidtDecomposition {
  RealVector coefficients;  // descending, length min(d_left, d_right)
  ComplexMatrix left;       // columns a_j over the left group (group order)
  ComplexMatrix right;      // columns b_j over the right group
};

struct Bipartition {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
};

struct AlternatingOptions {
  int restarts = 32;
  double tol = 1e-10;
  int max_iters = 1000;
  std::uint64_t seed = 0x5EED;
};

/// Reorders the tensor so each group becomes one party of dimension
/// prod(d_i); groups must cover every site exactly once.
PureState regroup(const PureState& psi, const SiteGroups& groups);

SchmidtDecomposition schmidt(const PureState& psi, const Bipartition& cut);

GeometricMeasureResult geometric_measure_bipartite(const PureState& psi, const Bipartition& cut);

/// Alternating maximization of the product overlap. Every site is a party
/// unless `parties` is non-empty. Candidates: the dominant computational
/// basis amplitude, the leading eigenvectors of each party's reduced density
/// matrix, then `restarts` seeded random starts; the best overlap wins with
/// ties going to the earliest candidate.
GeometricMeasureResult geometric_measure_multipartite(const PureState& psi, const AlternatingOptions& opts = {},
                                                      const SiteGroups& parties = {});

/// Exhaustive Bloch-sphere grid search (qubits only, dimension <= 64) with
/// 2^grid_depth points per angle per site, followed by three rounds of local
/// refinement at half the previous step. Oracle use only.
GeometricMeasureResult brute_force_geometric_measure(const PureState& psi, int grid_depth);

/// Schmidt path for two sites, alternating optimization otherwise.
GeometricMeasureResult geometric_measure(const PureState& psi, const AlternatingOptions& opts = {});

/// |<psi|ansatz>|^2 with the ansatz factors living on `parties` (all
/// singletons when empty).
double product_overlap_sq(const PureState& psi, const ProductAnsatz& ansatz, const SiteGroups& parties = {});

}  // namespace frustra
