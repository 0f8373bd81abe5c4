#include <benchmark/benchmark.h>

#include <bit>
#include <random>

#include "sperner/lattice.hpp"

using namespace sperner;

namespace {

Family random_family(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Family f(n);
  std::bernoulli_distribution coin(0.1);
  for (SetMask x = 0; x < (SetMask{1} << n); ++x)
    if (coin(rng)) f.insert(x);
  if (f.empty()) f.insert(0);
  return f;
}

void BM_UpClosure(benchmark::State& state) {
  const Family f = random_family(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(closure(f, Direction::Up));
}
BENCHMARK(BM_UpClosure)->DenseRange(8, 16, 4);

void BM_ComparabilityNumber(benchmark::State& state) {
  const Family f = random_family(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(comparability_number(f));
}
BENCHMARK(BM_ComparabilityNumber)->DenseRange(8, 16, 4);

void BM_CrossSperner(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FamilyTuple t{n, {}};
  // Three disjoint slices of the middle layer.
  for (int j = 0; j < 3; ++j) t.families.emplace_back(n);
  int seen = 0;
  for (SetMask x = 0; x < (SetMask{1} << n); ++x)
    if (std::popcount(x) == n / 2) t.families[seen++ % 3].insert(x);
  for (auto _ : state) benchmark::DoNotOptimize(is_cross_sperner(t));
}
BENCHMARK(BM_CrossSperner)->DenseRange(8, 14, 2);

}  // namespace
