#include <benchmark/benchmark.h>

#include "digitsum/density.hpp"
#include "digitsum/digits.hpp"
#include "digitsum/moments.hpp"
#include "digitsum/series.hpp"

using namespace digitsum;

static void BM_DyadicMultiplyAdd(benchmark::State& state) {
  const Dyadic a = Dyadic::parse("18169025645289/2^45"), b = Dyadic::parse("85/2^11");
  Dyadic acc;
  for (auto _ : state) {
    acc += a * b;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_DyadicMultiplyAdd);

static void BM_CtSingle(benchmark::State& state) {
  const uint64_t t = parse_binary("111101111011110111101111011111");
  for (auto _ : state) benchmark::DoNotOptimize(ct(t));
}
BENCHMARK(BM_CtSingle);

static void BM_DeltaColumnBits(benchmark::State& state) {
  const uint64_t t = (uint64_t{1} << state.range(0)) / 3;
  for (auto _ : state) benchmark::DoNotOptimize(delta_column(t));
}
BENCHMARK(BM_DeltaColumnBits)->Arg(16)->Arg(32)->Arg(62);

static void BM_ScanRange(benchmark::State& state) {
  const uint64_t hi = uint64_t{1} << state.range(0);
  ScanOptions options;
  options.workers = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(scan_range(1, hi, {}, options));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(hi - 1));
}
BENCHMARK(BM_ScanRange)->Args({16, 1})->Args({20, 1})->Args({20, 4})->UseRealTime()->Unit(benchmark::kMillisecond);

static void BM_ExpandFCube(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RationalFunctionSpec F = trivariate_F();
  for (auto _ : state) benchmark::DoNotOptimize(expand(F, {n, n + 1, n + 1}));
}
BENCHMARK(BM_ExpandFCube)->Arg(20)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_HSeries(benchmark::State& state) {
  const auto method = static_cast<HMethod>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(H_series(static_cast<int>(state.range(0)), method));
}
BENCHMARK(BM_HSeries)
    ->Args({500, static_cast<int>(HMethod::diagonal)})
    ->Args({500, static_cast<int>(HMethod::recurrence)})
    ->Args({500, static_cast<int>(HMethod::closed_form)})
    ->Args({4000, static_cast<int>(HMethod::closed_form)})
    ->Unit(benchmark::kMillisecond);

static void BM_MeanClosedForm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mean_closed_form(static_cast<uint64_t>(state.range(0)), MeanVariant::c));
}
BENCHMARK(BM_MeanClosedForm)->Arg(100)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

static void BM_EmpiricalMoments(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(empirical_moments(static_cast<uint64_t>(state.range(0)), 4));
}
BENCHMARK(BM_EmpiricalMoments)->Arg(16)->Arg(20)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
