#include <benchmark/benchmark.h>

#include "frustra/bounds.hpp"
#include "frustra/models.hpp"
#include "frustra/random.hpp"
#include "frustra/spectra.hpp"

using namespace frustra;

static void BM_HermitianEig(benchmark::State& state) {
  Rng rng(1);
  const ComplexMatrix m = random_hermitian(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(m));
}
BENCHMARK(BM_HermitianEig)->RangeMultiplier(2)->Range(4, 128);

static void BM_Svd(benchmark::State& state) {
  Rng rng(2);
  const ComplexMatrix m = random_gaussian(state.range(0), state.range(0) / 2 + 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(svd(m));
}
BENCHMARK(BM_Svd)->RangeMultiplier(2)->Range(4, 64);

static void BM_BuildDense(benchmark::State& state) {
  Rng rng(3);
  const SpinModel m = random_weakly_coupled_qubits(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(build_dense(m));
}
BENCHMARK(BM_BuildDense)->DenseRange(2, 8, 2);

static void BM_GeometricMeasure(benchmark::State& state) {
  Rng rng(4);
  const PureState psi = random_state(std::vector<int>(static_cast<std::size_t>(state.range(0)), 2), rng);
  for (auto _ : state) benchmark::DoNotOptimize(geometric_measure(psi));
}
BENCHMARK(BM_GeometricMeasure)->DenseRange(2, 6);

static void BM_BruteForceMeasure(benchmark::State& state) {
  Rng rng(5);
  const PureState psi = random_state({2, 2, 2}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_geometric_measure(psi, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BruteForceMeasure)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_AnalyzeGroundIsing(benchmark::State& state) {
  const Splitting s = split(ising2(1.0));
  for (auto _ : state) benchmark::DoNotOptimize(analyze_ground(s));
}
BENCHMARK(BM_AnalyzeGroundIsing);

static void BM_AnalyzeExcitedChain(benchmark::State& state) {
  const Splitting s = split(chain3({}));
  const std::vector<std::size_t> js = {0, 1, 2, 3, 4, 5, 6, 7};
  for (auto _ : state) benchmark::DoNotOptimize(analyze_excited(s, js));
}
BENCHMARK(BM_AnalyzeExcitedChain)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
