#include <benchmark/benchmark.h>

#include "lep/closed_forms.hpp"
#include "lep/estimators.hpp"
#include "lep/family.hpp"
#include "lep/forest_enum.hpp"
#include "lep/spectral.hpp"
#include "lep/wilson.hpp"

namespace {

void BM_PartitionFunctionComplete(benchmark::State& state) {
  const auto g = lep::make_family(lep::CompleteFamily{static_cast<std::size_t>(state.range(0))});
  for (auto _ : state) {
    benchmark::DoNotOptimize(lep::partition_function(g, 1.0));
  }
}
BENCHMARK(BM_PartitionFunctionComplete)->RangeMultiplier(4)->Range(16, 1024);

void BM_SampleForestCycle(benchmark::State& state) {
  const auto g = lep::make_family(lep::CycleFamily{static_cast<std::size_t>(state.range(0))});
  const lep::ForestSampler sampler(g, 0.1);
  lep::Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampler.sample(rng));
  }
}
BENCHMARK(BM_SampleForestCycle)->RangeMultiplier(4)->Range(16, 4096);

void BM_UTreeExactPath(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto g = lep::make_family(lep::PathFamily{d + 1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(lep::u_tree_exact(g, 0, d, 0.5));
  }
}
BENCHMARK(BM_UTreeExactPath)->DenseRange(5, 30, 5);

void BM_ZPath(benchmark::State& state) {
  const auto method = static_cast<lep::PathMethod>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lep::z_path(10000, 0.01, method));
  }
}
BENCHMARK(BM_ZPath)->DenseRange(0, 4);

void BM_UPathLarge(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lep::u_path(n, n / 2, n / 2 + 100, 1e-4));
  }
}
BENCHMARK(BM_UPathLarge)->RangeMultiplier(100)->Range(1000, 10000000);

void BM_EnumerateComplete(benchmark::State& state) {
  const auto g = lep::make_family(lep::CompleteFamily{static_cast<std::size_t>(state.range(0))});
  for (auto _ : state) {
    benchmark::DoNotOptimize(lep::enumerate_forests(g).size());
  }
}
BENCHMARK(BM_EnumerateComplete)->DenseRange(3, 7);

void BM_McCorrelation(benchmark::State& state) {
  const auto g = lep::make_family(lep::BottleneckFamily{20, 10, 0.5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(lep::mc_correlation(g, 0.2, 0, 20, 1000, 7, 1));
  }
}
BENCHMARK(BM_McCorrelation);

}  // namespace

BENCHMARK_MAIN();
