// Parallel kernels against their serial reference implementations.

#include <benchmark/benchmark.h>

#include <vector>

#include "histomerge/datagen.hpp"
#include "histomerge/kernels.hpp"
#include "histomerge/merge.hpp"

namespace {

using namespace histomerge;

const std::vector<std::vector<Value>>& partitions(std::size_t days, std::size_t per_day) {
  static std::vector<std::vector<Value>> cache;
  static std::size_t cached_days = 0, cached_per_day = 0;
  if (cached_days != days || cached_per_day != per_day) {
    cache.clear();
    for (std::size_t d = 0; d < days; ++d) {
      GumbelSpec spec;
      spec.count = per_day;
      spec.seed = 100 + d;
      cache.push_back(generate_gumbel(spec));
    }
    cached_days = days;
    cached_per_day = per_day;
  }
  return cache;
}

void BM_BuildExactEachSerial(benchmark::State& state) {
  const auto& parts = partitions(31, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::build_exact_each_serial(parts, 2032));
  state.SetItemsProcessed(state.iterations() * 31 * state.range(0));
}

void BM_BuildExactEach(benchmark::State& state) {
  const auto& parts = partitions(31, static_cast<std::size_t>(state.range(0)));
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::build_exact_each(parts, 2032, workers));
  state.SetItemsProcessed(state.iterations() * 31 * state.range(0));
}

void BM_SortedUnionSerial(benchmark::State& state) {
  const auto& parts = partitions(31, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sorted_union_serial(parts));
  state.SetItemsProcessed(state.iterations() * 31 * state.range(0));
}

void BM_SortedUnion(benchmark::State& state) {
  const auto& parts = partitions(31, static_cast<std::size_t>(state.range(0)));
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sorted_union(parts, workers));
  state.SetItemsProcessed(state.iterations() * 31 * state.range(0));
}

void BM_MergeSummaries(benchmark::State& state) {
  const auto t = static_cast<std::size_t>(state.range(0));
  const auto summaries = kernels::build_exact_each(partitions(31, 100000), t, 0);
  for (auto _ : state) benchmark::DoNotOptimize(merge_summaries(summaries, 254));
}

}  // namespace

BENCHMARK(BM_BuildExactEachSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildExactEach)->Args({100000, 1})->Args({100000, 2})->Args({100000, 4})->Args({100000, 8})
    ->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SortedUnionSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SortedUnion)->Args({100000, 1})->Args({100000, 2})->Args({100000, 4})->Args({100000, 8})
    ->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MergeSummaries)->Arg(508)->Arg(2032)->Arg(16256)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
