#include "frustra/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "frustra/error.hpp"

namespace frustra {

namespace {

std::size_t product(const std::vector<int>& dims) {
  std::size_t p = 1;
  for (int d : dims) p *= static_cast<std::size_t>(d);
  return p;
}

SiteGroups singletons(std::size_t n) {
  SiteGroups groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[i] = {i};
  return groups;
}

// Increments a mixed-radix counter; returns false after wrapping around.
bool advance(std::vector<int>& digits, const std::vector<int>& dims) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k] < dims[k]) return true;
    digits[k] = 0;
  }
  return false;
}

// w[a] = sum over indices with digit_i = a of conj(T[n]) * prod_{k != i} phi_k[n_k].
ComplexVector contract_except(const ComplexVector& t, const std::vector<int>& dims,
                              const std::vector<ComplexVector>& factors, std::size_t skip) {
  ComplexVector w = ComplexVector::Zero(dims[skip]);
  std::vector<int> digits(dims.size(), 0);
  Eigen::Index flat = 0;
  do {
    Complex weight = std::conj(t(flat));
    if (weight != Complex(0.0, 0.0)) {
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (k != skip) weight *= factors[k](digits[k]);
      }
      w(digits[skip]) += weight;
    }
    ++flat;
  } while (advance(digits, dims));
  return w;
}

struct AlternatingRun {
  std::vector<ComplexVector> factors;
  double overlap_sq = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

AlternatingRun run_alternating(const ComplexVector& t, const std::vector<int>& dims, std::vector<ComplexVector> start,
                               const AlternatingOptions& opts) {
  AlternatingRun run;
  run.factors = std::move(start);
  double current = std::norm(contract_except(t, dims, run.factors, 0).dot(run.factors[0].conjugate()));
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    const double previous = current;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      const ComplexVector w = contract_except(t, dims, run.factors, i);
      const double norm = w.norm();
      if (norm == 0.0) continue;
      run.factors[i] = w.conjugate() / norm;
      current = norm * norm;
    }
    run.trace.push_back(std::min(current, 1.0));
    run.iterations = iter + 1;
    if (current - previous < opts.tol) {
      run.converged = true;
      break;
    }
  }
  run.overlap_sq = std::min(current, 1.0);
  return run;
}

std::vector<ComplexVector> dominant_amplitude_start(const ComplexVector& t, const std::vector<int>& dims) {
  Eigen::Index best = 0;
  t.cwiseAbs().maxCoeff(&best);
  std::vector<ComplexVector> factors;
  std::size_t index = static_cast<std::size_t>(best);
  std::vector<int> digits(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = static_cast<int>(index % static_cast<std::size_t>(dims[k]));
    index /= static_cast<std::size_t>(dims[k]);
  }
  for (std::size_t k = 0; k < dims.size(); ++k) factors.push_back(ComplexVector::Unit(dims[k], digits[k]));
  return factors;
}

std::vector<ComplexVector> reduced_density_start(const ComplexVector& t, const std::vector<int>& dims) {
  std::vector<ComplexVector> factors;
  const std::size_t total = static_cast<std::size_t>(t.size());
  std::size_t right = total;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const auto d = static_cast<std::size_t>(dims[k]);
    right /= d;
    const std::size_t left = total / (d * right);
    ComplexMatrix rho = ComplexMatrix::Zero(dims[k], dims[k]);
    for (std::size_t l = 0; l < left; ++l) {
      for (std::size_t r = 0; r < right; ++r) {
        for (std::size_t a = 0; a < d; ++a) {
          const Complex ta = t(static_cast<Eigen::Index>((l * d + a) * right + r));
          for (std::size_t b = 0; b < d; ++b) {
            rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
                ta * std::conj(t(static_cast<Eigen::Index>((l * d + b) * right + r)));
          }
        }
      }
    }
    const EigenDecomposition eig = hermitian_eig(rho);
    factors.push_back(eig.vectors.col(dims[k] - 1));
  }
  return factors;
}

std::vector<ComplexVector> random_start(const std::vector<int>& dims, std::uint64_t seed, std::uint64_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  std::vector<ComplexVector> factors;
  for (int d : dims) {
    ComplexVector v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(normal(rng), normal(rng));
    factors.push_back(v.normalized());
  }
  return factors;
}

ProductAnsatz phase_fixed(std::vector<ComplexVector> factors) {
  ProductAnsatz ansatz{std::move(factors)};
  for (auto& f : ansatz.factors) fix_phase(f);
  return ansatz;
}

}  // namespace

std::string_view to_string(MeasureMethod m) {
  switch (m) {
    case MeasureMethod::SchmidtExact:
      return "schmidt_exact";
    case MeasureMethod::Alternating:
      return "alternating";
    case MeasureMethod::BruteForce:
      return "brute_force";
  }
  return "unknown";
}

PureState::PureState(ComplexVector amplitudes, std::vector<int> dims)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(ErrorKind::InvalidArgument, "state needs at least one site");
  for (int d : dims_) {
    if (d < 1) throw Error(ErrorKind::InvalidArgument, "local dimensions must be positive");
  }
  if (static_cast<std::size_t>(amplitudes_.size()) != product(dims_)) {
    throw Error(ErrorKind::InvalidArgument, "amplitude count " + std::to_string(amplitudes_.size()) +
                                                " does not match the product of local dimensions");
  }
  if (!amplitudes_.allFinite() || std::abs(amplitudes_.squaredNorm() - 1.0) > 1e-10) {
    throw Error(ErrorKind::InvalidArgument, "state is not normalized");
  }
}

PureState PureState::normalized(ComplexVector amplitudes, std::vector<int> dims) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw Error(ErrorKind::InvalidArgument, "cannot normalize a zero vector");
  return PureState(amplitudes / norm, std::move(dims));
}

ComplexVector ProductAnsatz::to_vector() const {
  ComplexVector v = ComplexVector::Ones(1);
  for (const auto& f : factors) v = kron(v, f);
  return v;
}

PureState regroup(const PureState& psi, const SiteGroups& groups) {
  const std::size_t n = psi.num_sites();
  std::vector<std::size_t> order;
  std::vector<int> seen(n, 0);
  std::vector<int> party_dims;
  for (const auto& g : groups) {
    if (g.empty()) throw Error(ErrorKind::InvalidBipartition, "empty party");
    int d = 1;
    for (std::size_t s : g) {
      if (s >= n) throw Error(ErrorKind::InvalidBipartition, "site " + std::to_string(s) + " does not exist");
      ++seen[s];
      order.push_back(s);
      d *= psi.dims()[s];
    }
    party_dims.push_back(d);
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s] != 1) {
      throw Error(ErrorKind::InvalidBipartition, "site " + std::to_string(s) + " must belong to exactly one party");
    }
  }
  std::vector<std::size_t> old_strides(n, 1);
  for (std::size_t i = n; i-- > 1;) old_strides[i - 1] = old_strides[i] * static_cast<std::size_t>(psi.dims()[i]);
  std::vector<int> permuted_dims(n);
  for (std::size_t k = 0; k < n; ++k) permuted_dims[k] = psi.dims()[order[k]];

  ComplexVector out(psi.amplitudes().size());
  std::vector<int> digits(n, 0);
  Eigen::Index flat = 0;
  do {
    std::size_t old_index = 0;
    for (std::size_t k = 0; k < n; ++k) old_index += static_cast<std::size_t>(digits[k]) * old_strides[order[k]];
    out(flat++) = psi.amplitudes()(static_cast<Eigen::Index>(old_index));
  } while (advance(digits, permuted_dims));
  return PureState(std::move(out), std::move(party_dims));
}

SchmidtDecomposition schmidt(const PureState& psi, const Bipartition& cut) {
  const PureState grouped = regroup(psi, {cut.left, cut.right});
  const int dl = grouped.dims()[0];
  const int dr = grouped.dims()[1];
  ComplexMatrix m(dl, dr);
  for (int a = 0; a < dl; ++a) {
    for (int b = 0; b < dr; ++b) m(a, b) = grouped.amplitudes()(static_cast<Eigen::Index>(a) * dr + b);
  }
  const SingularValueDecomposition d = svd(m);
  SchmidtDecomposition out{d.values, d.left, d.right.conjugate()};
  for (Eigen::Index j = 0; j < out.left.cols(); ++j) {
    const ComplexVector original = out.left.col(j);
    ComplexVector a = original;
    fix_phase(a);
    // a = e^{i theta} original, so b picks up the opposite phase.
    Eigen::Index pivot = 0;
    original.cwiseAbs().maxCoeff(&pivot);
    const Complex rot = original(pivot) != Complex(0.0, 0.0) ? a(pivot) / original(pivot) : Complex(1.0, 0.0);
    out.left.col(j) = a;
    out.right.col(j) /= rot;
  }
  return out;
}

GeometricMeasureResult geometric_measure_bipartite(const PureState& psi, const Bipartition& cut) {
  const SchmidtDecomposition sd = schmidt(psi, cut);
  GeometricMeasureResult out;
  out.method = MeasureMethod::SchmidtExact;
  out.parties = {cut.left, cut.right};
  out.maximizer.factors = {sd.left.col(0), sd.right.col(0)};
  out.overlap_sq = std::min(1.0, sd.coefficients(0) * sd.coefficients(0));
  out.value = 1.0 - out.overlap_sq;
  out.converged = true;
  return out;
}

GeometricMeasureResult geometric_measure_multipartite(const PureState& psi, const AlternatingOptions& opts,
                                                      const SiteGroups& parties) {
  if (psi.num_sites() < 2 && parties.empty()) {
    throw Error(ErrorKind::InvalidArgument, "multipartite measure needs at least two sites");
  }
  const SiteGroups groups = parties.empty() ? singletons(psi.num_sites()) : parties;
  const PureState grouped = regroup(psi, groups);
  const ComplexVector& t = grouped.amplitudes();
  const std::vector<int>& dims = grouped.dims();

  std::vector<std::vector<ComplexVector>> starts;
  starts.push_back(dominant_amplitude_start(t, dims));
  starts.push_back(reduced_density_start(t, dims));
  for (int r = 0; r < opts.restarts; ++r) starts.push_back(random_start(dims, opts.seed, static_cast<std::uint64_t>(r)));

  AlternatingRun best;
  best.overlap_sq = -1.0;
  bool any_converged = false;
  for (auto& start : starts) {
    AlternatingRun run = run_alternating(t, dims, std::move(start), opts);
    any_converged |= run.converged;
    if (run.overlap_sq > best.overlap_sq) best = std::move(run);
  }

  GeometricMeasureResult out;
  out.method = MeasureMethod::Alternating;
  out.parties = groups;
  out.maximizer = phase_fixed(std::move(best.factors));
  out.overlap_sq = std::min(1.0, product_overlap_sq(psi, out.maximizer, groups));
  out.value = 1.0 - out.overlap_sq;
  out.restarts = opts.restarts;
  out.iterations = best.iterations;
  out.converged = any_converged;
  out.overlap_trace = std::move(best.trace);
  return out;
}

namespace {

struct GridSearch {
  const ComplexVector& psi;
  std::size_t n;
  std::vector<std::vector<double>> thetas;
  std::vector<std::vector<double>> phis;
  std::vector<std::vector<Complex>> buffers;
  std::vector<double> theta_now, phi_now;
  std::vector<double> best_theta, best_phi;
  double best = -1.0;

  GridSearch(const ComplexVector& amplitudes, std::size_t sites)
      : psi(amplitudes), n(sites), thetas(sites), phis(sites), buffers(sites + 1), theta_now(sites), phi_now(sites) {
    buffers[0].resize(static_cast<std::size_t>(psi.size()));
    for (Eigen::Index i = 0; i < psi.size(); ++i) buffers[0][static_cast<std::size_t>(i)] = std::conj(psi(i));
    for (std::size_t k = 1; k <= n; ++k) buffers[k].resize(std::size_t{1} << (n - k));
  }

  void search(std::size_t level) {
    if (level == n) {
      const double value = std::norm(buffers[n][0]);
      if (value > best) {
        best = value;
        best_theta = theta_now;
        best_phi = phi_now;
      }
      return;
    }
    const std::vector<Complex>& in = buffers[level];
    std::vector<Complex>& out = buffers[level + 1];
    const std::size_t half = out.size();
    for (double theta : thetas[level]) {
      const double c = std::cos(0.5 * theta);
      const double s = std::sin(0.5 * theta);
      for (double phi : phis[level]) {
        const Complex b = std::polar(s, phi);
        for (std::size_t r = 0; r < half; ++r) out[r] = in[r] * c + in[half + r] * b;
        theta_now[level] = theta;
        phi_now[level] = phi;
        search(level + 1);
      }
    }
  }
};

ComplexVector bloch(double theta, double phi) {
  ComplexVector v(2);
  v << Complex(std::cos(0.5 * theta), 0.0), std::polar(std::sin(0.5 * theta), phi);
  return v;
}

}  // namespace

GeometricMeasureResult brute_force_geometric_measure(const PureState& psi, int grid_depth) {
  const std::size_t n = psi.num_sites();
  if (psi.amplitudes().size() > 64 ||
      std::any_of(psi.dims().begin(), psi.dims().end(), [](int d) { return d != 2; })) {
    throw Error(ErrorKind::OracleScaleExceeded, "grid oracle is limited to at most 6 qubits");
  }
  if (grid_depth < 1 || grid_depth > 10) throw Error(ErrorKind::InvalidArgument, "grid_depth must be in [1, 10]");
  const int points = 1 << grid_depth;
  double theta_step = std::numbers::pi / (points - 1);
  double phi_step = 2.0 * std::numbers::pi / points;

  GridSearch grid(psi.amplitudes(), n);
  for (std::size_t k = 0; k < n; ++k) {
    for (int i = 0; i < points; ++i) {
      grid.thetas[k].push_back(theta_step * i);
      grid.phis[k].push_back(phi_step * i);
    }
  }
  grid.search(0);

  for (int round = 0; round < 3; ++round) {
    theta_step *= 0.5;
    phi_step *= 0.5;
    const auto center_theta = grid.best_theta;
    const auto center_phi = grid.best_phi;
    for (std::size_t k = 0; k < n; ++k) {
      grid.thetas[k] = {center_theta[k] - theta_step, center_theta[k], center_theta[k] + theta_step};
      grid.phis[k] = {center_phi[k] - phi_step, center_phi[k], center_phi[k] + phi_step};
    }
    grid.search(0);
  }

  GeometricMeasureResult out;
  out.method = MeasureMethod::BruteForce;
  out.parties = singletons(n);
  std::vector<ComplexVector> factors;
  for (std::size_t k = 0; k < n; ++k) factors.push_back(bloch(grid.best_theta[k], grid.best_phi[k]));
  out.maximizer = phase_fixed(std::move(factors));
  out.overlap_sq = std::min(1.0, grid.best);
  out.value = 1.0 - out.overlap_sq;
  out.converged = true;
  return out;
}

GeometricMeasureResult geometric_measure(const PureState& psi, const AlternatingOptions& opts) {
  if (psi.num_sites() == 2) return geometric_measure_bipartite(psi, {{0}, {1}});
  return geometric_measure_multipartite(psi, opts);
}

double product_overlap_sq(const PureState& psi, const ProductAnsatz& ansatz, const SiteGroups& parties) {
  const SiteGroups groups = parties.empty() ? singletons(psi.num_sites()) : parties;
  if (ansatz.factors.size() != groups.size()) {
    throw Error(ErrorKind::InvalidArgument, "ansatz has " + std::to_string(ansatz.factors.size()) +
                                                " factors for " + std::to_string(groups.size()) + " parties");
  }
  const PureState grouped = regroup(psi, groups);
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (ansatz.factors[k].size() != grouped.dims()[k]) {
      throw Error(ErrorKind::InvalidArgument, "ansatz factor " + std::to_string(k) + " has the wrong dimension");
    }
  }
  return std::norm(grouped.amplitudes().dot(ansatz.to_vector()));
}

}  // namespace frustra
