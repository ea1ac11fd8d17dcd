#include <benchmark/benchmark.h>

#include "tsel/analysis.hpp"
#include "tsel/equilibrium.hpp"
#include "tsel/inversion.hpp"
#include "tsel/monte_carlo.hpp"
#include "tsel/optimal.hpp"

namespace {

using namespace tsel;

void BM_InversionIidEquilibrium(benchmark::State& state) {
  const MixedCdf d = equilibrium_interval(0.0, 0.79).dist;
  for (auto _ : state) benchmark::DoNotOptimize(inversion_iid(d).value);
}
BENCHMARK(BM_InversionIidEquilibrium);

void BM_HybridDecompose(benchmark::State& state) {
  const MixedCdf d = equilibrium_unrestricted().dist;
  for (auto _ : state) benchmark::DoNotOptimize(hybrid_decompose(d).b_coeff);
}
BENCHMARK(BM_HybridDecompose);

void BM_VerifyEquilibrium(benchmark::State& state) {
  const EquilibriumSolution sol = equilibrium_interval(0.1, 0.9);
  const auto grid = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_equilibrium(sol, grid).pass);
  }
}
BENCHMARK(BM_VerifyEquilibrium)->Arg(1000)->Arg(10'000);

void BM_SampleEquilibrium(benchmark::State& state) {
  const MixedCdf d = equilibrium_interval(0.0, 0.79).dist;
  SplitMix64 rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(d.sample_value(rng));
}
BENCHMARK(BM_SampleEquilibrium);

void BM_MonteCarloTrials(benchmark::State& state) {
  const AssignmentRule rule = AssignmentRule::iid(optimal_iid());
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_inversion(rule, n, 100'000, 1, 1).value);
  }
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_MonteCarloTrials)->Arg(2)->Arg(5)->Arg(10);

void BM_SearchBestInterval(benchmark::State& state) {
  SearchOptions o;
  o.resolution = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(search_best_interval(o).best.value);
  }
}
BENCHMARK(BM_SearchBestInterval)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
