#include "selftest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>

#include "commands.hpp"
#include "frustra/error.hpp"
#include "frustra/parallel.hpp"
#include "frustra/saturation.hpp"

namespace frustra::cli {

namespace {

std::string format(const char* fmt, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

SuiteResult suite_bounds(std::uint64_t seed, std::size_t trials_per_dim, int jobs) {
  SuiteResult result{"bounds", 2 * trials_per_dim};
  std::atomic<std::size_t> failures{0};
  parallel_for(result.trials, jobs, [&](std::size_t i) {
    const int d = i < trials_per_dim ? 2 : 3;
    Rng rng = seeded_rng(seed, 0xB0 + static_cast<std::uint64_t>(d), i % trials_per_dim);
    const FrustrationReport r = analyze_ground(split(random_two_site_model(d, rng)));
    const double slack = tolerance::kStructural * r.scale;
    bool ok = r.E_f >= -slack && r.E_f <= r.E_I_tot + slack;
    if (r.delta_e_ent > 1e-6) {
      ok &= r.entanglement <= r.E_f / r.delta_e_ent + 1e-6;
      ok &= r.entanglement <= r.E_I_tot / r.delta_e_ent + 1e-6;
    }
    if (!ok) ++failures;
  });
  result.failures = failures;
  return result;
}

SuiteResult suite_saturation(std::uint64_t seed, std::size_t instances, int jobs) {
  SuiteResult result{"saturation", instances};
  const std::vector<double> gammas = {1e-1, 1e-2, 1e-3};
  struct Outcome {
    bool positive = true;
    double ratio = 0.0;
    double relative = 0.0;
    double entanglement = 0.0;
  };
  std::vector<Outcome> outcomes(instances);
  parallel_for(instances, jobs, [&](std::size_t i) {
    const int d = 2 + static_cast<int>(i % 2);
    Rng rng = seeded_rng(seed, 0x5A7, i);
    const SaturationSweep sweep = saturation_sweep(random_two_site_model(d, rng), gammas);
    Outcome& o = outcomes[i];
    for (const auto& rec : sweep.records) o.positive &= rec.excess.has_value() && *rec.excess > 1e-12;
    if (o.positive) {
      o.ratio = *sweep.records[2].excess / *sweep.records[1].excess;
      o.entanglement = sweep.records[2].report.entanglement;
      o.relative = *sweep.records[2].excess / std::max(o.entanglement, 1e-300);
    }
  });
  std::size_t decaying = 0;
  std::vector<double> relative;
  for (const Outcome& o : outcomes) {
    if (!o.positive) ++result.failures;
    if (o.positive && o.ratio <= 0.3) ++decaying;
    if (o.positive && o.entanglement >= 0.05) relative.push_back(o.relative);
  }
  const double fraction = instances > 0 ? static_cast<double>(decaying) / static_cast<double>(instances) : 1.0;
  const double med = median(relative);
  if (fraction < 0.9) ++result.failures;
  if (med > 0.05) ++result.failures;
  result.detail = format("decay fraction %.3f, median excess/E %.3g", fraction, med);
  return result;
}

SuiteResult suite_theorem(std::uint64_t seed, std::size_t trials, const std::vector<int>& dims,
                          const std::vector<double>& norms, int jobs) {
  SuiteResult result{"theorem1", trials + 1};
  std::atomic<std::size_t> failures{0};
  std::vector<double> margins(trials, 0.0);
  parallel_for(trials, jobs, [&](std::size_t t) {
    const PerturbationTrial trial = make_perturbation_trial(seed, t, dims, norms);
    try {
      const PerturbationCheckReport r = check_theorem(trial.instance);
      margins[t] = r.op_ineq_margin;
      if (!r.passes()) ++failures;
    } catch (const Error&) {
      ++failures;
    }
  });
  const double eps = 1e-3;
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(1, 1) = 1.0;
  ComplexMatrix c = ComplexMatrix::Zero(2, 2);
  c(0, 1) = c(1, 0) = eps;
  const PerturbationInstance inst = make_hermitian_instance(b, c, select::Ground{}, select::Values{{1.0}});
  const PerturbationCheckReport sharp = check_theorem(inst);
  const double ratio = sharp.canonical_cosines.at(0) * inst.delta_a / eps;
  if (!sharp.passes() || ratio < 0.99) ++failures;
  result.failures = failures;
  const double worst = margins.empty() ? 0.0 : *std::min_element(margins.begin(), margins.end());
  result.detail = format("worst margin %.3g, sharpness ratio %.6f", worst, ratio);
  return result;
}

SuiteResult suite_excited(std::uint64_t seed, std::size_t models, int jobs) {
  SuiteResult result{"excited", models};
  std::atomic<std::size_t> failures{0};
  std::atomic<std::size_t> checked{0};
  parallel_for(models, jobs, [&](std::size_t i) {
    Rng rng = seeded_rng(seed, 0xE3C, i);
    const Splitting s = split(random_weakly_coupled_qubits(3, rng));
    std::vector<std::size_t> js(8);
    for (std::size_t j = 0; j < js.size(); ++j) js[j] = j;
    bool ok = true;
    for (const ExcitedBoundReport& r : analyze_excited(s, js)) {
      if (r.precondition_met && r.bound_29) {
        ++checked;
        ok &= r.entanglement <= *r.bound_29 + 1e-6;
      }
      if (r.bound_29 && r.bound_30) ok &= *r.bound_30 >= *r.bound_29;
    }
    if (!ok) ++failures;
  });
  result.failures = failures;
  result.detail = format("%.0f eigenstates with precondition met", static_cast<double>(checked.load()));
  return result;
}

SuiteResult suite_measure(std::uint64_t seed, std::size_t states, int jobs) {
  SuiteResult result{"measure", states + 2};
  std::atomic<std::size_t> failures{0};
  std::vector<double> gaps(states, 0.0);
  parallel_for(states, jobs, [&](std::size_t i) {
    Rng rng = seeded_rng(seed, 0x3EA, i);
    const PureState psi = random_state({2, 2}, rng);
    const double exact = geometric_measure_bipartite(psi, {{0}, {1}}).value;
    const double alternating = geometric_measure_multipartite(psi).value;
    gaps[i] = std::abs(exact - alternating);
    if (gaps[i] > 1e-6) ++failures;
  });
  ComplexVector ghz = ComplexVector::Zero(8);
  ghz(0) = ghz(7) = std::sqrt(0.5);
  ComplexVector w = ComplexVector::Zero(8);
  w(1) = w(2) = w(4) = 1.0 / std::sqrt(3.0);
  const double e_ghz = geometric_measure(PureState(ghz, {2, 2, 2})).value;
  const double e_w = geometric_measure(PureState(w, {2, 2, 2})).value;
  if (std::abs(e_ghz - 0.5) > 1e-6) ++failures;
  if (std::abs(e_w - 5.0 / 9.0) > 1e-4) ++failures;
  result.failures = failures;
  const double worst = gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());
  result.detail = format("worst |alternating - exact| %.3g, GHZ %.9f", worst, e_ghz);
  return result;
}

SuiteResult suite_norms(std::uint64_t seed, std::size_t matrices, int jobs) {
  SuiteResult result{"norms", matrices};
  std::atomic<std::size_t> failures{0};
  parallel_for(matrices, jobs, [&](std::size_t i) {
    Rng rng = seeded_rng(seed, 0x40A, i);
    std::uniform_int_distribution<int> dim(2, 16);
    const int rows = dim(rng);
    const int cols = dim(rng);
    const ComplexMatrix m = random_gaussian(rows, cols, rng);
    bool ok = norm_chain_holds(m);
    const RealVector sigma = singular_values(m);
    const double op = ui_norm_from_singular_values(sigma, NormKind::Operator);
    const double hs = ui_norm_from_singular_values(sigma, NormKind::HilbertSchmidt);
    const double tr = ui_norm_from_singular_values(sigma, NormKind::Trace);
    ok &= op <= hs * (1 + 1e-12) && hs <= tr * (1 + 1e-12);
    const ComplexVector u = random_gaussian(rows, 1, rng).col(0).normalized();
    const ComplexVector v = random_gaussian(cols, 1, rng).col(0).normalized();
    const ComplexMatrix dyad = u * v.adjoint();
    for (NormKind kind : kAllNormKinds) ok &= std::abs(ui_norm(dyad, kind) - 1.0) <= 1e-12;
    if (!ok) ++failures;
  });
  result.failures = failures;
  return result;
}

std::vector<SuiteResult> run_selftest(const RunConfig& config) {
  auto size = [&](std::size_t fallback) {
    return config.trials ? static_cast<std::size_t>(std::max(*config.trials, 1)) : fallback;
  };
  return {suite_bounds(config.seed, size(500), config.jobs),
          suite_saturation(config.seed, size(50), config.jobs),
          suite_theorem(config.seed, size(500), config.dims, config.norms, config.jobs),
          suite_excited(config.seed, size(100), config.jobs),
          suite_measure(config.seed, size(200), config.jobs),
          suite_norms(config.seed, size(200), config.jobs)};
}

}  // namespace frustra::cli
