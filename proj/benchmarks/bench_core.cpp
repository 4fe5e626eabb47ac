#include <benchmark/benchmark.h>

#include "bidisk/agler.hpp"

using namespace bidisk;

static void BM_Expand(benchmark::State& state) {
  const RationalInnerMatrix t = builtin("scalar_favorite");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expand(t, n, n));
}
BENCHMARK(BM_Expand)->Arg(8)->Arg(16)->Arg(32);

static void BM_ModelBasis(benchmark::State& state) {
  const RationalInnerMatrix t = builtin("ex42_symmetric");
  const int n = static_cast<int>(state.range(0));
  const Pad pad = choose_pad(t).pad;
  for (auto _ : state) benchmark::DoNotOptimize(model_basis(t, {n, n, t.d()}, pad));
}
BENCHMARK(BM_ModelBasis)->Arg(4)->Arg(8)->Arg(12);

static void BM_RankLevel(benchmark::State& state) {
  const RationalInnerMatrix t = builtin("ex43_deg2");
  const int n = static_cast<int>(state.range(0));
  const Pad pad = choose_pad(t).pad;
  for (auto _ : state) benchmark::DoNotOptimize(rank_level(t, n, n, pad, SweepOptions{}));
}
BENCHMARK(BM_RankLevel)->Arg(4)->Arg(8)->Arg(12);

static void BM_AglerSpaces(benchmark::State& state) {
  const RationalInnerMatrix t = builtin("ex42_symmetric");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_agler_spaces(t, n, n));
}
BENCHMARK(BM_AglerSpaces)->Arg(4)->Arg(8)->Arg(10);

BENCHMARK_MAIN();
