#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "frustra/bounds.hpp"
#include "frustra/models.hpp"
#include "frustra/random.hpp"
#include "oracles/oracles.hpp"
#include "support/error_kind.hpp"

using namespace frustra;

namespace {

OperatorTerm single(double c, std::size_t site, LocalOperator op) { return {c, {{site, std::move(op)}}}; }

void expect_report_invariants(const FrustrationReport& r, const EntanglementOptions& opts = {}) {
  const double tol = 1e-9 * r.scale;
  EXPECT_NEAR(r.E_f, r.E0 - r.E0_L - r.E0_I, 1e-10 * r.scale);
  EXPECT_GE(r.E_f, -tol);
  EXPECT_LE(r.E_f, r.E_I_tot + tol);
  EXPECT_NEAR(r.local_frustration + r.interaction_frustration, r.E_f, tol);
  EXPECT_LE(r.local_frustration, r.E_f + tol);
  EXPECT_GE(r.interaction_frustration, -tol);
  if (r.ef_bound) {
    EXPECT_LE(r.entanglement, *r.ef_bound + opts.tol_ent);
    EXPECT_LE(r.entanglement, *r.ratio_bound + opts.tol_ent);
    EXPECT_TRUE(r.undefined_reason.empty());
  } else {
    EXPECT_FALSE(r.ratio_bound.has_value());
    EXPECT_EQ(r.undefined_reason, kUndefinedBoundReason);
  }
}

// Diagonal two-qubit model with local fields and a ZZ coupling.
SpinModel zz_model(double h0, double h1, double j) {
  SpinModel m;
  m.dims = {2, 2};
  m.terms = {single(h0, 0, Pauli::Z), single(h1, 1, Pauli::Z), {j, {{0, Pauli::Z}, {1, Pauli::Z}}}};
  return m;
}

}  // namespace

TEST(AnalyzeGround, IsingSymmetricAtUnitField) {
  const FrustrationReport r = analyze_ground(split(ising2(1.0)));
  EXPECT_NEAR(r.E0, -std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(r.E_f, 3.0 - std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(r.delta_e_ent, 2.0, 1e-12);
  ASSERT_TRUE(r.ef_bound.has_value());
  EXPECT_NEAR(*r.ef_bound, oracle::ising_bound_symmetric(1.0), 1e-12);
  EXPECT_NEAR(*r.ef_bound, 0.3819660113, 1e-9);
  EXPECT_NEAR(r.entanglement, oracle::ising_entanglement(1.0), 1e-10);
  EXPECT_NEAR(r.entanglement, 0.0527864045, 1e-9);
  EXPECT_NEAR(*r.ratio_bound, 1.0, 1e-12);
  EXPECT_FALSE(r.degenerate_ground);
  expect_report_invariants(r);
}

TEST(AnalyzeGround, IsingAsymmetricSplit) {
  for (double g : {0.1, 1.0, 3.0}) {
    const FrustrationReport r = analyze_ground(split(ising2(g), ising2_asymmetric_assignment()));
    ASSERT_TRUE(r.ef_bound.has_value());
    EXPECT_NEAR(*r.ef_bound, oracle::ising_bound_asymmetric(g), 1e-10) << g;
    expect_report_invariants(r);
  }
  EXPECT_NEAR(*analyze_ground(split(ising2(1.0), ising2_asymmetric_assignment())).ef_bound, 0.0890728, 1e-7);
}

TEST(AnalyzeGround, TriangleIsDegenerateWithoutBound) {
  const FrustrationReport r = analyze_ground(split(triangle(1.0)));
  EXPECT_NEAR(r.E0, -1.0, 1e-12);
  EXPECT_EQ(r.E0_L, 0.0);
  EXPECT_NEAR(r.E0_I, -1.0, 1e-12);
  EXPECT_NEAR(r.E_f, 0.0, 1e-12);
  EXPECT_EQ(r.delta_e_ent, 0.0);
  EXPECT_TRUE(r.degenerate_ground);
  EXPECT_FALSE(r.ef_bound.has_value());
  EXPECT_EQ(r.undefined_reason, "delta_e_ent = 0");
}

TEST(AnalyzeGround, ReferenceSelectsGroundVector) {
  // At g = 0 the ground space is span{|00>, |11>}; the limit g -> 0+ picks the GHZ-like state.
  const Splitting s = split(ising2(0.0));
  const ComplexVector ref = oracle::ground_state(oracle::ising2(1e-3));
  const FrustrationReport r = analyze_ground(s, {}, ref);
  EXPECT_TRUE(r.degenerate_ground);
  EXPECT_NEAR(r.entanglement, 0.5, 1e-9);
  const FrustrationReport plain = analyze_ground(s);
  EXPECT_TRUE(plain.degenerate_ground);
  EXPECT_NEAR(plain.E0, -1.0, 1e-12);
}

TEST(AnalyzeGround, RandomInstancesSatisfyInvariants) {
  Rng rng(11);
  for (int i = 0; i < 60; ++i) {
    const int d = 2 + i % 2;
    const Splitting s = split(random_two_site_model(d, rng));
    const FrustrationReport r = analyze_ground(s);
    expect_report_invariants(r);
    const double exact = oracle::bipartite_measure(r.ground_state.amplitudes(), d, d);
    EXPECT_NEAR(r.entanglement, exact, 1e-9);
  }
}

TEST(AnalyzeGround, ZeroFrustrationIffSharedGroundState) {
  // Commuting diagonal terms: the product ground state minimizes both parts.
  const FrustrationReport shared = analyze_ground(split(zz_model(-1.0, -0.5, -0.3)));
  EXPECT_NEAR(shared.E_f, 0.0, 1e-12);
  EXPECT_NEAR(shared.entanglement, 0.0, 1e-12);
  // Antiferromagnetic coupling against aligned fields: the ground states differ.
  const FrustrationReport clash = analyze_ground(split(zz_model(-1.0, -1.5, 0.3)));
  EXPECT_NEAR(clash.E_f, 0.6, 1e-12);
  // A transverse perturbation removes the shared eigenbasis.
  SpinModel tilted = zz_model(-1.0, -0.5, -0.3);
  tilted.terms.push_back({0.4, {{0, Pauli::X}, {1, Pauli::X}}});
  const FrustrationReport t = analyze_ground(split(tilted));
  EXPECT_GT(t.E_f, 1e-6);
  EXPECT_GT(t.entanglement, 0.0);
  expect_report_invariants(t);
}

TEST(AnalyzeGround, EntanglementIsSplittingIndependent) {
  const SpinModel m = ising2(0.7);
  std::vector<Splitting> splittings = {split(m), split(m, ising2_asymmetric_assignment()),
                                       split(m, ExplicitAssignment{{1}, {0, 2}})};
  std::vector<double> ents, bounds;
  for (const auto& s : splittings) {
    const FrustrationReport r = analyze_ground(s);
    ents.push_back(r.entanglement);
    bounds.push_back(*r.ef_bound);
  }
  const auto [lo, hi] = std::minmax_element(ents.begin(), ents.end());
  EXPECT_LT(*hi - *lo, 1e-8);
  EXPECT_GT(std::abs(bounds[0] - bounds[1]), 1e-3);
}

TEST(ProofStep, IsingKeepsOnlyTheAlignedState) {
  const Splitting s = split(ising2(1.0));
  const FrustrationReport r = analyze_ground(s);
  const ProofStepDiagnostics d = proof_step_check(s, r);
  ASSERT_EQ(d.below_threshold.size(), 1u);
  const LocalSpectrum ls = local_spectrum(s);
  EXPECT_EQ(ls.configuration_of(d.below_threshold[0]), (std::vector<int>{0, 0}));
  // lambda_0^2 of the two-term Schmidt form is 1 - E.
  EXPECT_NEAR(d.discarded_weight, oracle::ising_entanglement(1.0), 1e-10);
  EXPECT_NEAR(d.retained_weight + d.discarded_weight, 1.0, 1e-12);
  EXPECT_TRUE(d.all_hold());
}

TEST(ProofStep, RandomQutritsPass) {
  Rng rng(12);
  for (int i = 0; i < 20; ++i) {
    const Splitting s = split(random_two_site_model(3, rng));
    const FrustrationReport r = analyze_ground(s);
    if (!r.ef_bound) continue;
    EXPECT_TRUE(proof_step_check(s, r).all_hold()) << i;
  }
}

TEST(ProofStep, ProductGroundStateHasNoSlack) {
  const Splitting s = split(zz_model(-1.0, -0.5, -0.3));
  const FrustrationReport r = analyze_ground(s);
  const ProofStepDiagnostics d = proof_step_check(s, r);
  EXPECT_TRUE(d.all_hold());
  EXPECT_NEAR(d.discarded_weight, 0.0, 1e-12);
  EXPECT_NEAR(d.truncated_entanglement, 0.0, 1e-12);
}

TEST(ProofStep, UndefinedWithoutGap) {
  const Splitting s = split(triangle(1.0));
  const FrustrationReport r = analyze_ground(s);
  EXPECT_EQ(kind_of([&] { proof_step_check(s, r); }), ErrorKind::UndefinedBound);
}

TEST(ProductSubspaces, CountingFormula) {
  Rng rng(13);
  const std::vector<std::vector<int>> shapes = {{2, 2}, {2, 2, 2}, {3, 3}, {2, 3, 4}, {2, 2, 2, 2}};
  for (const auto& dims : shapes) {
    SpinModel m;
    m.dims = dims;
    for (std::size_t s = 0; s < dims.size(); ++s) m.terms.push_back(single(1.0, s, random_hermitian(dims[s], rng)));
    const LocalSpectrum ls = local_spectrum(split(m));
    const auto subspaces = enumerate_product_subspaces(ls);
    std::size_t total = 1, expected = 0;
    for (int d : dims) total *= d;
    for (int d : dims) expected += total / d;
    EXPECT_EQ(subspaces.size(), expected);
    std::vector<int> appearances(total, 0);
    for (const auto& k : subspaces) {
      EXPECT_EQ(k.members.size(), std::size_t(dims[k.varying_site]));
      EXPECT_EQ(k.fixed_configuration[k.varying_site], -1);
      for (std::size_t idx : k.members) {
        ++appearances[idx];
        const auto cfg = ls.configuration_of(idx);
        for (std::size_t s = 0; s < dims.size(); ++s) {
          if (s != k.varying_site) EXPECT_EQ(cfg[s], k.fixed_configuration[s]);
        }
      }
    }
    for (int a : appearances) EXPECT_EQ(a, int(dims.size()));
  }
}

TEST(ProductSubspaces, SpecExampleCounts) {
  EXPECT_EQ(enumerate_product_subspaces(local_spectrum(split(ising2(1.0)))).size(), 4u);
  EXPECT_EQ(enumerate_product_subspaces(local_spectrum(split(chain3({})))).size(), 12u);
  Rng rng(14);
  const auto qutrits = enumerate_product_subspaces(local_spectrum(split(random_two_site_model(3, rng))));
  EXPECT_EQ(qutrits.size(), 6u);
  for (const auto& k : qutrits) EXPECT_EQ(k.members.size(), 3u);
}

TEST(ProductSubspaces, SuperpositionsAreProductStates) {
  Rng rng(15);
  const LocalSpectrum ls = local_spectrum(split(chain3({0.5, 1.5, 2.0, 0.3, 0.3})));
  for (const auto& k : enumerate_product_subspaces(ls)) {
    ComplexVector v = ComplexVector::Zero(8);
    const ComplexMatrix c = random_gaussian(k.members.size(), 1, rng);
    for (std::size_t m = 0; m < k.members.size(); ++m) v += c(m, 0) * ls.product_vector(ls.configuration_of(k.members[m]));
    EXPECT_LE(geometric_measure(PureState::normalized(v, {2, 2, 2})).value, 1e-9);
  }
}

TEST(ProductSubspaces, EnumerationCap) {
  const LocalSpectrum ls = local_spectrum(split(chain3({})));
  EXPECT_EQ(kind_of([&] { enumerate_product_subspaces(ls, 23); }), ErrorKind::EnumerationCap);
  EXPECT_EQ(enumerate_product_subspaces(ls, 24).size(), 12u);
}

TEST(DeltaJEnt, IsingGroundConfiguration) {
  const LocalSpectrum ls = local_spectrum(split(ising2(1.0)));
  const DeltaJEnt d = delta_j_ent(ls, std::vector<int>{0, 0});
  EXPECT_NEAR(d.delta, 2.0, 1e-12);
  EXPECT_EQ(d.chosen.varying_site, 0u);
}

TEST(DeltaJEnt, MatchesExhaustiveListing) {
  // Independent fields with gaps 1, 2, 3.
  SpinModel m;
  m.dims = {2, 2, 2};
  m.terms = {single(-0.5, 0, Pauli::Z), single(-1.0, 1, Pauli::Z), single(-1.5, 2, Pauli::Z)};
  const LocalSpectrum ls = local_spectrum(split(m));
  auto energy = [](int a, int b, int c) { return -0.5 + a - 1.0 + 2.0 * b - 1.5 + 3.0 * c; };
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        const std::vector<int> cfg = {a, b, c};
        double best = -1.0;
        std::size_t best_site = 0;
        for (std::size_t site = 0; site < 3; ++site) {
          double worst = std::numeric_limits<double>::infinity();
          for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
              for (int z = 0; z < 2; ++z) {
                const std::vector<int> other = {x, y, z};
                bool inside = true;
                for (std::size_t s = 0; s < 3; ++s) inside &= s == site || other[s] == cfg[s];
                if (!inside) worst = std::min(worst, std::abs(energy(x, y, z) - energy(a, b, c)));
              }
            }
          }
          if (worst > best) {
            best = worst;
            best_site = site;
          }
        }
        const DeltaJEnt d = delta_j_ent(ls, cfg);
        EXPECT_NEAR(d.delta, best, 1e-12);
        EXPECT_EQ(d.chosen.varying_site, best_site);
      }
    }
  }
  // The single excitation on site 0: varying site 2 keeps the cheapest outside state 1 away.
  EXPECT_NEAR(delta_j_ent(ls, std::vector<int>{1, 0, 0}).delta, 1.0, 1e-12);
}

TEST(DeltaJEnt, VanishesWithoutLocalTerms) {
  const LocalSpectrum ls = local_spectrum(split(triangle(1.0)));
  for (std::size_t i = 0; i < ls.dimension(); ++i) EXPECT_EQ(delta_j_ent(ls, ls.configuration_of(i)).delta, 0.0);
}

TEST(AnalyzeExcited, IsingGroundAtStrongField) {
  const ExcitedBoundReport r = analyze_excited(split(ising2(2.0)), 0);
  EXPECT_NEAR(r.delta_j_ent, 4.0, 1e-12);
  EXPECT_NEAR(r.interaction_norm, 1.0, 1e-12);
  EXPECT_NEAR(r.E_I_max, 1.0, 1e-12);
  EXPECT_TRUE(r.precondition_met);
  ASSERT_TRUE(r.bound_29.has_value());
  EXPECT_NEAR(*r.bound_29, 1.0 / 9.0, 1e-12);
  EXPECT_NEAR(r.entanglement, 0.5 - 2.0 / std::sqrt(17.0), 1e-8);
  EXPECT_LE(r.entanglement, *r.bound_29);
  ASSERT_TRUE(r.dk_bound.has_value());
  EXPECT_LE(*r.dk_bound, *r.bound_29 + 1e-12);
  EXPECT_GE(*r.dk_bound, r.entanglement);
}

TEST(AnalyzeExcited, NoInteractionGivesZeroBound) {
  // Gaps 1, 2.2 and 3.4 keep every product level non-degenerate.
  SpinModel m;
  m.dims = {2, 2, 2};
  m.terms = {single(-0.5, 0, Pauli::Z), single(-1.1, 1, Pauli::Z), single(-1.7, 2, Pauli::Z)};
  const auto reports = analyze_excited(split(m), {0, 1, 2, 3, 4, 5, 6, 7});
  for (const auto& r : reports) {
    ASSERT_TRUE(r.bound_29.has_value());
    EXPECT_EQ(*r.bound_29, 0.0);
    EXPECT_NEAR(r.entanglement, 0.0, 1e-12);
  }
}

TEST(AnalyzeExcited, WeaklyCoupledModelsRespectBounds) {
  Rng rng(16);
  for (int i = 0; i < 10; ++i) {
    const Splitting s = split(random_weakly_coupled_qubits(3, rng));
    for (const auto& r : analyze_excited(s, {0, 1, 2, 3, 4, 5, 6, 7})) {
      if (r.precondition_met && r.bound_29) EXPECT_LE(r.entanglement, *r.bound_29 + 1e-9);
      if (r.bound_29 && r.bound_30) EXPECT_GE(*r.bound_30, *r.bound_29);
    }
  }
}

TEST(AnalyzeExcited, BatchMatchesSingleAndJobs) {
  Rng rng(17);
  const Splitting s = split(random_weakly_coupled_qubits(3, rng));
  const std::vector<std::size_t> js = {7, 0, 3};
  const auto serial = analyze_excited(s, js, {}, 1);
  const auto threaded = analyze_excited(s, js, {}, 3);
  for (std::size_t k = 0; k < js.size(); ++k) {
    const ExcitedBoundReport single_run = analyze_excited(s, js[k]);
    EXPECT_EQ(serial[k].j, js[k]);
    EXPECT_EQ(serial[k].entanglement, single_run.entanglement);
    EXPECT_EQ(serial[k].entanglement, threaded[k].entanglement);
    EXPECT_EQ(serial[k].bound_29, threaded[k].bound_29);
  }
  EXPECT_EQ(kind_of([&] { analyze_excited(s, 8); }), ErrorKind::IndexOutOfRange);
}

TEST(EnergyScale, FloorsAtOne) {
  RealVector small(2), large(2);
  small << -0.1, 0.2;
  large << -7.0, 3.0;
  EXPECT_EQ(energy_scale(small), 1.0);
  EXPECT_EQ(energy_scale(large), 7.0);
}
