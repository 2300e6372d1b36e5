// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "mmc/bitgrid.hpp"
#include "mmc/contraction.hpp"
#include "mmc/heuristics.hpp"
#include "mmc/instances.hpp"
#include "mmc/solvers.hpp"

namespace {

mmc::Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? mmc::Execution::Serial : mmc::Execution::Parallel;
}

void BM_NCount(benchmark::State& state) {
  const auto m = mmc::random_instance(static_cast<int>(state.range(1)), static_cast<int>(state.range(1)), 0.2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(mmc::n_count(m, mode(state)));
}
BENCHMARK(BM_NCount)->ArgsProduct({{0, 1}, {8, 12, 16}})->Unit(benchmark::kMillisecond);

void BM_Neighborization(benchmark::State& state) {
  const auto m = mmc::random_instance(10, 10, 0.2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(mmc::neighborization(m, mode(state)).density);
}
BENCHMARK(BM_Neighborization)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Greedy(benchmark::State& state) {
  const int p = static_cast<int>(state.range(1));
  const auto m = mmc::random_instance(p, p, 0.05, 3);
  for (auto _ : state) benchmark::DoNotOptimize(mmc::greedy(m, mode(state)).density);
}
BENCHMARK(BM_Greedy)->ArgsProduct({{0, 1}, {100, 300}})->Unit(benchmark::kMillisecond);

void BM_GreedyDenseReference(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const auto m = mmc::random_instance(p, p, 0.05, 3);
  for (auto _ : state) benchmark::DoNotOptimize(mmc::greedy_reference(m).density);
}
BENCHMARK(BM_GreedyDenseReference)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Naive(benchmark::State& state) {
  const auto m = mmc::random_instance(9, 9, 0.2, 4);
  mmc::EnumerateOptions opts;
  opts.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(mmc::naive_enumerate(m, opts).density);
}
BENCHMARK(BM_Naive)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Exact(benchmark::State& state) {
  const auto m = mmc::random_instance(12, 12, 0.1, 5);
  mmc::ExactOptions opts;
  opts.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(mmc::exact_solve(m, opts).density);
}
BENCHMARK(BM_Exact)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DensityDense(benchmark::State& state) {
  const auto m = mmc::random_instance(1000, 1000, 0.05, 6);
  for (auto _ : state) benchmark::DoNotOptimize(mmc::density(m));
}
BENCHMARK(BM_DensityDense)->Unit(benchmark::kMillisecond);

void BM_DensityBitGrid(benchmark::State& state) {
  const mmc::BitGrid g(mmc::random_instance(1000, 1000, 0.05, 6));
  for (auto _ : state) benchmark::DoNotOptimize(g.density());
}
BENCHMARK(BM_DensityBitGrid)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
