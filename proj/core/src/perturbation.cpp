#include "frustra/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "frustra/error.hpp"

namespace frustra {

namespace {

double op_norm(const ComplexMatrix& m) { return ui_norm(m, NormKind::Operator); }

void require_square_pair(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
    throw Error(ErrorKind::InvalidArgument, "matrices must be square and of equal size");
  }
}

std::vector<Eigen::Index> cluster_indices(const RealVector& values, Eigen::Index k, double tol) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::abs(values(i) - values(k)) < tol) out.push_back(i);
  }
  return out;
}

ComplexMatrix columns(const ComplexMatrix& m, const std::vector<Eigen::Index>& idx) {
  ComplexMatrix out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = m.col(idx[i]);
  return out;
}

Eigen::Index select_index(const RealVector& values, const EigenvalueSelector& sel, double scale) {
  if (std::holds_alternative<select::Ground>(sel)) return 0;
  if (const auto* i = std::get_if<select::Index>(&sel)) {
    if (i->k >= static_cast<std::size_t>(values.size())) {
      throw Error(ErrorKind::IndexOutOfRange, "eigenvalue index " + std::to_string(i->k) + " out of range");
    }
    return static_cast<Eigen::Index>(i->k);
  }
  const double x = std::get<select::Value>(sel).x;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::abs(values(i) - x) <= 1e-8 * scale) return i;
  }
  throw Error(ErrorKind::InvalidArgument, "no eigenvalue matches " + std::to_string(x));
}

std::vector<Eigen::Index> select_set(const RealVector& values, const EigenvalueSetSelector& sel, double scale) {
  std::vector<Eigen::Index> picked;
  const auto n = values.size();
  if (std::holds_alternative<select::UpperHalf>(sel)) {
    for (Eigen::Index i = n / 2; i < n; ++i) picked.push_back(i);
  } else if (const auto* ks = std::get_if<select::Indices>(&sel)) {
    for (std::size_t k : ks->ks) picked.push_back(select_index(values, select::Index{k}, scale));
  } else {
    for (double x : std::get<select::Values>(sel).xs) picked.push_back(select_index(values, select::Value{x}, scale));
  }
  if (picked.empty()) throw Error(ErrorKind::InvalidArgument, "empty eigenvalue set");
  return picked;
}

void require_unitary(const ComplexMatrix& u) {
  const auto n = u.rows();
  if (u.cols() != n || (u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm() > 1e-10) {
    throw Error(ErrorKind::InvalidArgument, "eigenbasis must be unitary");
  }
}

}  // namespace

double instance_scale(const PerturbationInstance& inst) {
  return std::max({1.0, op_norm(inst.A), op_norm(inst.B)});
}

void validate(const PerturbationInstance& inst) {
  require_square_pair(inst.A, inst.B);
  require_square_pair(inst.A, inst.C);
  require_square_pair(inst.A, inst.P_a);
  require_square_pair(inst.A, inst.Q);
  const double scale = instance_scale(inst);
  if ((inst.A - inst.B - inst.C).norm() > 1e-12 * scale) {
    throw Error(ErrorKind::InvalidArgument, "A differs from B + C");
  }
  if (!is_projector(inst.P_a)) throw Error(ErrorKind::NotProjector, "P_a is not an orthogonal projector");
  if (!is_projector(inst.Q)) throw Error(ErrorKind::NotProjector, "Q is not an orthogonal projector");
  if ((inst.P_a * inst.A - inst.a * inst.P_a).norm() > tolerance::kStructural * scale) {
    throw Error(ErrorKind::InvalidArgument, "P_a does not project into an eigenspace of A");
  }
  if ((inst.Q * inst.B - inst.B * inst.Q).norm() > tolerance::kStructural * scale) {
    throw Error(ErrorKind::InvalidArgument, "Q does not commute with B");
  }
}

PerturbationInstance make_hermitian_instance(const ComplexMatrix& B, const ComplexMatrix& C,
                                             const EigenvalueSelector& a, const EigenvalueSetSelector& beta) {
  require_square_pair(B, C);
  if (!is_hermitian(B) || !is_hermitian(C)) throw Error(ErrorKind::NotHermitian, "B and C must be Hermitian");
  PerturbationInstance inst;
  inst.B = B;
  inst.C = C;
  inst.A = B + C;
  const EigenDecomposition ea = hermitian_eig(inst.A);
  const EigenDecomposition eb = hermitian_eig(B);
  const double scale = std::max({1.0, ea.values.cwiseAbs().maxCoeff(), eb.values.cwiseAbs().maxCoeff()});
  const double tol = tolerance::kStructural * scale;

  const Eigen::Index ia = select_index(ea.values, a, scale);
  inst.a = ea.values(ia);
  inst.P_a = projector_onto(columns(ea.vectors, cluster_indices(ea.values, ia, tol)));

  std::set<Eigen::Index> q_indices;
  for (Eigen::Index ib : select_set(eb.values, beta, scale)) {
    for (Eigen::Index k : cluster_indices(eb.values, ib, tol)) q_indices.insert(k);
  }
  inst.delta_a = std::numeric_limits<double>::infinity();
  for (Eigen::Index k : q_indices) {
    if (inst.beta.empty() || std::abs(eb.values(k) - inst.beta.back().real()) >= tol) inst.beta.emplace_back(eb.values(k));
    inst.delta_a = std::min(inst.delta_a, std::abs(inst.a - eb.values(k)));
  }
  inst.Q = projector_onto(columns(eb.vectors, {q_indices.begin(), q_indices.end()}));
  return inst;
}

PerturbationInstance make_normal_instance(const ComplexMatrix& U_A, const ComplexVector& alpha,
                                          const ComplexMatrix& U_B, const ComplexVector& b, std::size_t a_index,
                                          const std::vector<std::size_t>& beta_indices) {
  require_unitary(U_A);
  require_unitary(U_B);
  if (alpha.size() != U_A.rows() || b.size() != U_B.rows() || U_A.rows() != U_B.rows()) {
    throw Error(ErrorKind::InvalidArgument, "eigenvalue lists must match the eigenbasis size");
  }
  if (a_index >= static_cast<std::size_t>(alpha.size())) {
    throw Error(ErrorKind::IndexOutOfRange, "a_index out of range");
  }
  PerturbationInstance inst;
  inst.A = U_A * alpha.asDiagonal() * U_A.adjoint();
  inst.B = U_B * b.asDiagonal() * U_B.adjoint();
  inst.C = inst.A - inst.B;
  const double scale = std::max({1.0, alpha.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
  const double tol = tolerance::kStructural * scale;

  inst.a = alpha(static_cast<Eigen::Index>(a_index));
  std::vector<Eigen::Index> p_indices;
  for (Eigen::Index k = 0; k < alpha.size(); ++k) {
    if (std::abs(alpha(k) - inst.a) < tol) p_indices.push_back(k);
  }
  inst.P_a = projector_onto(columns(U_A, p_indices));

  std::set<Eigen::Index> q_indices;
  for (std::size_t ib : beta_indices) {
    if (ib >= static_cast<std::size_t>(b.size())) throw Error(ErrorKind::IndexOutOfRange, "beta index out of range");
    const Complex value = b(static_cast<Eigen::Index>(ib));
    inst.beta.push_back(value);
    for (Eigen::Index k = 0; k < b.size(); ++k) {
      if (std::abs(b(k) - value) < tol) q_indices.insert(k);
    }
  }
  if (q_indices.empty()) throw Error(ErrorKind::InvalidArgument, "empty eigenvalue set");
  inst.delta_a = std::numeric_limits<double>::infinity();
  for (Eigen::Index k : q_indices) inst.delta_a = std::min(inst.delta_a, std::abs(inst.a - b(k)));
  inst.Q = projector_onto(columns(U_B, {q_indices.begin(), q_indices.end()}));
  return inst;
}

bool PerturbationCheckReport::chain_ok() const {
  return std::all_of(norm_chain.begin(), norm_chain.end(),
                     [](const NormTriple& t) { return t.nondecreasing(tolerance::kStructural); });
}

bool PerturbationCheckReport::cosines_ok() const {
  return std::all_of(canonical_cosines.begin(), canonical_cosines.end(),
                     [](double c) { return c >= 0.0 && c <= 1.0 + tolerance::kReconstruction; });
}

PerturbationCheckReport check_theorem(const PerturbationInstance& inst) {
  validate(inst);
  PerturbationCheckReport r;
  r.scale = instance_scale(inst);
  if (!(inst.delta_a > tolerance::kStructural * r.scale)) {
    throw Error(ErrorKind::DegenerateSeparation, "delta_a vanishes");
  }
  const ComplexMatrix pq = inst.P_a * inst.Q;
  const ComplexMatrix pcq = inst.P_a * inst.C * inst.Q;

  r.op_ineq_margin = psd_leq(operator_abs(pq), operator_abs(pcq) / inst.delta_a).margin;
  r.dominance_ok = singular_dominance(pcq, inst.C, tolerance::kStructural * r.scale);

  const RealVector s_pq = singular_values(pq);
  const RealVector s_pcq = singular_values(pcq) / inst.delta_a;
  const RealVector s_c = singular_values(inst.C) / inst.delta_a;
  for (std::size_t i = 0; i < std::size(kAllNormKinds); ++i) {
    const NormKind kind = kAllNormKinds[i];
    r.norm_chain[i] = {kind, ui_norm_from_singular_values(s_pq, kind), ui_norm_from_singular_values(s_pcq, kind),
                       ui_norm_from_singular_values(s_c, kind)};
  }
  r.canonical_cosines = canonical_cosines(inst.P_a, inst.Q);
  return r;
}

std::vector<double> canonical_cosines(const ComplexMatrix& P, const ComplexMatrix& Q) {
  if (P.rows() != Q.rows() || P.cols() != Q.cols()) {
    throw Error(ErrorKind::InvalidArgument, "projectors must have equal size");
  }
  if (!is_projector(P)) throw Error(ErrorKind::NotProjector, "P is not an orthogonal projector");
  if (!is_projector(Q)) throw Error(ErrorKind::NotProjector, "Q is not an orthogonal projector");
  const auto rank_p = static_cast<Eigen::Index>(std::lround(P.trace().real()));
  const auto rank_q = static_cast<Eigen::Index>(std::lround(Q.trace().real()));
  const RealVector sigma = singular_values(P * Q);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < std::min({rank_p, rank_q, sigma.size()}); ++k) {
    double c = sigma(k);
    if (c > 1.0 && c <= 1.0 + tolerance::kReconstruction) c = 1.0;
    if (c < 0.0 && c >= -tolerance::kReconstruction) c = 0.0;
    out.push_back(c);
  }
  return out;
}

DkChain dk_entanglement_chain(const Splitting& s, std::size_t j, const ProductSubspace& subspace,
                              const EntanglementOptions& opts) {
  const EigenDecomposition eig = hermitian_eig(s.dense_total());
  const auto dim = static_cast<std::size_t>(eig.values.size());
  if (j >= dim) throw Error(ErrorKind::IndexOutOfRange, "eigenstate index " + std::to_string(j) + " out of range");
  const auto jj = static_cast<Eigen::Index>(j);
  const LocalSpectrum levels = local_spectrum(s);
  const double scale = energy_scale(eig.values);

  DkChain out;
  out.delta_kperp = separation_outside(levels, subspace, eig.values(jj));
  if (!(out.delta_kperp > tolerance::kStructural * scale)) {
    throw Error(ErrorKind::DegenerateSeparation, "eigenvalue touches the complement of the product subspace");
  }
  out.hi_over_delta = interaction_extremes(s).spectral_radius / out.delta_kperp;

  const ComplexVector v = eig.vectors.col(jj);
  if (dim <= 256) {
    ComplexMatrix q = ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t index : subspace.members) {
      const ComplexVector k = levels.product_vector(levels.configuration_of(index));
      q -= k * k.adjoint();
    }
    out.pjq_norm = ui_norm(v * v.adjoint() * q, NormKind::Operator);
  } else {
    const ComplexVector alpha = levels.to_product_amplitudes(v);
    double outside = 0.0;
    for (Eigen::Index k = 0; k < alpha.size(); ++k) {
      if (!subspace.contains(static_cast<std::size_t>(k))) outside += std::norm(alpha(k));
    }
    out.pjq_norm = std::sqrt(outside);
  }

  out.entanglement = geometric_measure(PureState::normalized(v, s.model().dims), opts.alternating).value;
  out.norm_within_bound = out.pjq_norm <= out.hi_over_delta + tolerance::kStructural;
  out.entanglement_within_norm = out.entanglement <= out.pjq_norm * out.pjq_norm + opts.tol_ent;
  return out;
}

}  // namespace frustra
