#include <benchmark/benchmark.h>

#include "sperner/search.hpp"

using namespace sperner;

namespace {

void BM_ExactPi(benchmark::State& state) {
  SearchConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  cfg.k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(exact_pi(cfg));
}
BENCHMARK(BM_ExactPi)->Args({4, 2})->Args({4, 3})->Args({4, 4})->Unit(benchmark::kMillisecond);

void BM_ExactSigma(benchmark::State& state) {
  SearchConfig cfg;
  cfg.n = 4;
  cfg.k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_sigma(cfg));
}
BENCHMARK(BM_ExactSigma)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_CompTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_comp_table(n));
}
BENCHMARK(BM_CompTable)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_UpsetEnumeration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::uint64_t count = 0;
    for_each_upset(n, [&](std::uint64_t) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_UpsetEnumeration)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_HeuristicPi63(benchmark::State& state) {
  SearchConfig cfg;
  cfg.n = 6;
  cfg.k = 3;
  cfg.budget.max_nodes = 200000;
  for (auto _ : state) benchmark::DoNotOptimize(heuristic_pi(cfg));
}
BENCHMARK(BM_HeuristicPi63)->Unit(benchmark::kMillisecond);

}  // namespace
