#include <benchmark/benchmark.h>

#include <random>

#include "hecke/series.hpp"

namespace {

hecke::ModSeries random_series(std::size_t len, hecke::u64 p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  hecke::ModSeries s{p, std::vector<hecke::u64>(len)};
  for (auto& x : s.coeffs) x = rng() % p;
  return s;
}

void BM_NttMultiply(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  const hecke::u64 p = hecke::ntt_prime(0).modulus;
  const auto a = random_series(len, p, 1);
  const auto b = random_series(len, p, 2);
  for (auto _ : state) benchmark::DoNotOptimize(hecke::ntt_multiply(a, b, 2 * len - 1));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NttMultiply)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Unit(benchmark::kMillisecond)->Complexity();

void BM_DeltaExpansion(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hecke::delta_expansion(n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DeltaExpansion)
    ->Arg(10'000)
    ->Arg(100'000)
    ->Arg(1'000'000)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oNLogN);

void BM_Eigenform26(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(hecke::eigenform_expansion(26, 100'000));
}
BENCHMARK(BM_Eigenform26)->Unit(benchmark::kMillisecond);

}  // namespace
