#pragma once

#include <array>
#include <cstddef>
#include <variant>
#include <vector>

#include "frustra/bounds.hpp"
#include "frustra/spectra.hpp"

namespace frustra {

/// A = B + C with a selected eigenvalue a of A and a set beta of eigenvalues of B.
struct PerturbationInstance {
  ComplexMatrix A;
  ComplexMatrix B;
  ComplexMatrix C;
  Complex a{};
  ComplexMatrix P_a;
  std::vector<Complex> beta;
  ComplexMatrix Q;
  double delta_a = 0.0;
};

/// max(1, ||A||_op, ||B||_op).
double instance_scale(const PerturbationInstance& inst);

/// Throws InvalidArgument / NotProjector when the instance is inconsistent.
void validate(const PerturbationInstance& inst);

namespace select {
struct Ground {};
struct Index {
  std::size_t k = 0;
};
struct Value {
  double x = 0.0;
};
struct UpperHalf {};
struct Indices {
  std::vector<std::size_t> ks;
};
struct Values {
  std::vector<double> xs;
};
}  // namespace select

using EigenvalueSelector = std::variant<select::Ground, select::Index, select::Value>;
using EigenvalueSetSelector = std::variant<select::UpperHalf, select::Indices, select::Values>;

/// Hermitian instance A = B + C. Eigenspaces are taken as whole clusters
/// (1e-9 * scale); explicit values match within 1e-8 * scale.
PerturbationInstance make_hermitian_instance(const ComplexMatrix& B, const ComplexMatrix& C,
                                             const EigenvalueSelector& a = select::Ground{},
                                             const EigenvalueSetSelector& beta = select::UpperHalf{});

/// Normal instance A = U_A diag(alpha) U_A^dagger, B = U_B diag(b) U_B^dagger,
/// C = A - B. P_a covers every alpha equal to alpha[a_index]; Q covers every
/// b equal to one of b[beta_indices].
PerturbationInstance make_normal_instance(const ComplexMatrix& U_A, const ComplexVector& alpha,
                                          const ComplexMatrix& U_B, const ComplexVector& b, std::size_t a_index,
                                          const std::vector<std::size_t>& beta_indices);

struct NormTriple {
  NormKind kind = NormKind::Operator;
  double pq = 0.0;     // |||P_a Q|||
  double pcq = 0.0;    // |||P_a C Q||| / delta_a
  double c = 0.0;      // |||C||| / delta_a

  bool nondecreasing(double tol) const { return pq <= pcq + tol && pcq <= c + tol; }
};

struct PerturbationCheckReport {
  double op_ineq_margin = 0.0;
  bool dominance_ok = false;
  std::array<NormTriple, 3> norm_chain{};
  std::vector<double> canonical_cosines;
  double scale = 1.0;

  bool margin_ok() const { return op_ineq_margin >= -1e-8 * scale; }
  bool chain_ok() const;
  bool cosines_ok() const;
  bool passes() const { return margin_ok() && dominance_ok && chain_ok() && cosines_ok(); }
};

/// Throws DegenerateSeparation when delta_a <= 1e-9 * scale.
PerturbationCheckReport check_theorem(const PerturbationInstance& inst);

/// Singular values of P Q, descending, limited to min(rank P, rank Q) and
/// clipped into [0, 1] when within 1e-10. Throws NotProjector.
std::vector<double> canonical_cosines(const ComplexMatrix& P, const ComplexMatrix& Q);

struct DkChain {
  double pjq_norm = 0.0;       // ||P_j Q_{K-perp}||_op
  double hi_over_delta = 0.0;  // ||H_I||_op / delta_{j,K-perp}
  double delta_kperp = 0.0;
  double entanglement = 0.0;
  bool norm_within_bound = false;
  bool entanglement_within_norm = false;

  bool holds() const { return norm_within_bound && entanglement_within_norm; }
};

/// Applies the eigenspace bound to the j-th eigenstate of H against the
/// complement of a product subspace. Throws DegenerateSeparation when the
/// separation vanishes.
DkChain dk_entanglement_chain(const Splitting& s, std::size_t j, const ProductSubspace& subspace,
                              const EntanglementOptions& opts = {});

}  // namespace frustra
