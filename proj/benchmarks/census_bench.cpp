#include <benchmark/benchmark.h>

#include "ptlab/census.hpp"
#include "ptlab/graph.hpp"
#include "ptlab/property.hpp"
#include "ptlab/tester.hpp"

namespace {

ptlab::Graph bench_graph(int n) { return ptlab::random_graph(n, 0x9e3779b9u + static_cast<unsigned>(n)); }

void BM_FourProfileFast(benchmark::State& state) {
  const auto g = bench_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto profile = ptlab::four_profile(g, ptlab::CensusMode::kFast);
    benchmark::DoNotOptimize(profile);
  }
}
BENCHMARK(BM_FourProfileFast)->Arg(64)->Arg(128)->Arg(256)->Arg(512);

void BM_FourProfileReference(benchmark::State& state) {
  const auto g = bench_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto profile = ptlab::four_profile(g, ptlab::CensusMode::kReference);
    benchmark::DoNotOptimize(profile);
  }
}
BENCHMARK(BM_FourProfileReference)->Arg(16)->Arg(32)->Arg(64);

void BM_PairAggregates(benchmark::State& state) {
  const auto g = bench_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto agg = ptlab::pair_aggregates(g);
    benchmark::DoNotOptimize(agg);
  }
}
BENCHMARK(BM_PairAggregates)->Arg(128)->Arg(256)->Arg(512);

void BM_RandomGraph(benchmark::State& state) {
  for (auto _ : state) {
    auto g = ptlab::random_graph(static_cast<int>(state.range(0)), 7);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_RandomGraph)->Arg(256)->Arg(512);

void BM_PotRun(benchmark::State& state) {
  const auto g = bench_graph(128);
  const auto pot = ptlab::pot_from_property(
      ptlab::WeightedDensityProperty::named(ptlab::WeightedDensityProperty::kDefaultName));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto outcome = ptlab::run_pot(pot, g, ++seed);
    benchmark::DoNotOptimize(outcome);
  }
}
BENCHMARK(BM_PotRun);

}  // namespace

BENCHMARK_MAIN();
