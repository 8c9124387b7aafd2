#include <benchmark/benchmark.h>

#include "dfreq/analysis.hpp"
#include "dfreq/diffusion.hpp"
#include "dfreq/experiments.hpp"
#include "dfreq/phasegen.hpp"

namespace {

using namespace dfreq;

void BM_ScenarioStream(benchmark::State& state) {
  const Scenario sc({{0, PhaseParams{}}});
  const long n = state.range(0);
  for (auto _ : state) {
    auto stream = sc.stream(n);
    benchmark::DoNotOptimize(stream.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ScenarioStream)->Arg(1000)->Arg(10000);

void BM_CorruptStream(benchmark::State& state) {
  const Scenario sc({{0, PhaseParams{}}});
  const auto clean = sc.stream(state.range(0));
  NoiseConfig nc;
  for (auto _ : state) {
    auto pairs = corrupt_stream(clean, nc, analytic_power(PhaseParams{}));
    benchmark::DoNotOptimize(pairs.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CorruptStream)->Arg(10000);

void BM_DamtccAdaptStep(benchmark::State& state) {
  AugmentedWeights w{{0.99, 0.12}, {0.01, -0.02}};
  FilterParams p;
  const RegressorPair sample{{1.2, -0.3}, {1.18, -0.35}};
  for (auto _ : state) {
    w = adapt_step(w, sample, p, Algorithm::damtcc);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_DamtccAdaptStep);

void BM_DaclmsAdaptStep(benchmark::State& state) {
  AugmentedWeights w{{0.99, 0.12}, {0.01, -0.02}};
  FilterParams p;
  const RegressorPair sample{{1.2, -0.3}, {1.18, -0.35}};
  for (auto _ : state) {
    w = adapt_step(w, sample, p, Algorithm::daclms);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_DaclmsAdaptStep);

void BM_NetworkIteration(benchmark::State& state) {
  const auto topo = NetworkTopology::fixture("topology1");
  NetworkState net = NetworkState::uniform(topo, FilterParams{});
  const Scenario sc({{0, PhaseParams{}}});
  const auto clean = sc.stream(2);
  std::vector<RegressorPair> samples(8, RegressorPair{clean[0], clean[1]});
  for (auto _ : state) {
    const auto psi = adapt_all(net, samples, Algorithm::damtcc);
    auto combined = combine_all(psi, net.combination);
    benchmark::DoNotOptimize(combined.data());
  }
  state.SetItemsProcessed(state.iterations() * 8);
}
BENCHMARK(BM_NetworkIteration);

void BM_FrequencyEstimate(benchmark::State& state) {
  const AugmentedWeights w{{0.992, 0.157}, {0.0, 0.094}};
  for (auto _ : state) {
    auto fe = frequency_estimate(w, 1.0 / 2500.0);
    benchmark::DoNotOptimize(fe);
  }
}
BENCHMARK(BM_FrequencyEstimate);

}  // namespace

BENCHMARK_MAIN();
