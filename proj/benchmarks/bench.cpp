#include <benchmark/benchmark.h>

#include "fixtures.hpp"

namespace {

using namespace hierprobe;

void BM_EnumerateAllProperties(benchmark::State& state) {
  const auto taxes = testing::random_taxonomies(1, static_cast<int>(state.range(0)));
  std::size_t produced = 0;
  for (auto _ : state) {
    for (const auto& t : taxes) {
      for (auto p : kAllProperties) {
        auto out = enumerate_ternaries(t, p);
        produced += out.size();
        benchmark::DoNotOptimize(out.data());
      }
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(produced));
}
BENCHMARK(BM_EnumerateAllProperties)->Arg(10)->Arg(100);

void BM_BuildSplits(benchmark::State& state) {
  const auto taxes = testing::random_taxonomies(2, 100);
  GenConfig config;
  config.max_per_node = 10;
  for (auto _ : state) {
    auto splits = build_splits(taxes, Property::PF, config);
    benchmark::DoNotOptimize(splits[0].ternaries.data());
  }
}
BENCHMARK(BM_BuildSplits);

void BM_Evaluate(benchmark::State& state) {
  const auto taxes = testing::random_taxonomies(3, 100);
  const auto datasets = testing::all_probe_datasets(taxes);
  const auto table = testing::gaussian_table(taxes, 384, 3);
  EvalOptions options;
  options.threads = static_cast<std::size_t>(state.range(0));
  std::size_t judged = 0;
  for (const auto& ds : datasets) judged += ds.ternaries.size();
  for (auto _ : state) {
    auto report = evaluate(datasets, table, options);
    benchmark::DoNotOptimize(report.all);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(judged * state.iterations()));
}
BENCHMARK(BM_Evaluate)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_RandomBaseline(benchmark::State& state) {
  const auto taxes = testing::random_taxonomies(4, 100);
  const auto datasets = testing::all_probe_datasets(taxes);
  BaselineOptions options;
  options.runs = 10;
  for (auto _ : state) {
    auto report = random_baseline(datasets, options);
    benchmark::DoNotOptimize(report.all);
  }
}
BENCHMARK(BM_RandomBaseline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
