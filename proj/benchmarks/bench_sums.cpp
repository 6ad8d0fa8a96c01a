#include <benchmark/benchmark.h>

#include "hecke/hecke_table.hpp"
#include "hecke/singular_series.hpp"
#include "hecke/sums.hpp"

namespace {

const hecke::EigenvalueTable& table() {
  static const hecke::EigenvalueTable t = hecke::normalize(hecke::delta_expansion(1 << 20));
  return t;
}

void BM_ShiftedSum(benchmark::State& state) {
  const auto x = static_cast<std::size_t>(state.range(0));
  const auto& t = table();
  for (auto _ : state) benchmark::DoNotOptimize(hecke::shifted_sum(t, x, 6));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(x + 1));
}
BENCHMARK(BM_ShiftedSum)->Arg(10'000)->Arg(100'000)->Arg(500'000);

void BM_ShiftedTotal(benchmark::State& state) {
  const auto& t = table();
  for (auto _ : state) benchmark::DoNotOptimize(hecke::shifted_sum_total(t, 500'000, 19'000));
}
BENCHMARK(BM_ShiftedTotal)->Unit(benchmark::kMillisecond);

void BM_ExpSum(benchmark::State& state) {
  const auto x = static_cast<std::size_t>(state.range(0));
  const auto& t = table();
  for (auto _ : state) benchmark::DoNotOptimize(hecke::exp_sum_lambda_sq(t, 0.318309886183, x));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(x + 1));
}
BENCHMARK(BM_ExpSum)->Arg(1 << 12)->Arg(1 << 17)->Arg(1 << 19);

void BM_MillerSum(benchmark::State& state) {
  static const hecke::SquareTable sq = hecke::square_table(table(), 1 << 17);
  for (auto _ : state) benchmark::DoNotOptimize(hecke::miller_sum(sq, 0.1234567, 1 << 17));
}
BENCHMARK(BM_MillerSum);

void BM_SingularSeriesBuild(benchmark::State& state) {
  const auto& t = table();
  for (auto _ : state) benchmark::DoNotOptimize(hecke::SingularSeries(0.3841, t, 1000));
}
BENCHMARK(BM_SingularSeriesBuild)->Unit(benchmark::kMillisecond);

void BM_BhBatch(benchmark::State& state) {
  static const hecke::SingularSeries series(0.3841, table(), 1000);
  for (auto _ : state) benchmark::DoNotOptimize(series.bh_batch(10'000, 1000));
}
BENCHMARK(BM_BhBatch)->Unit(benchmark::kMillisecond);

}  // namespace
