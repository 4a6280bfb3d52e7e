#include <benchmark/benchmark.h>

#include "drinfeld/counting.hpp"
#include "drinfeld/linsys.hpp"
#include "drinfeld/moore.hpp"

using namespace drinfeld;

static void BM_StrataDuality(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_strata_duality(3, 3, 3));
}
BENCHMARK(BM_StrataDuality)->Unit(benchmark::kMillisecond);

static void BM_StratifyCount(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(stratify_count(2, 3, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_StratifyCount)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_MovingSingularity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(moving_singularity_check(3, 2));
}
BENCHMARK(BM_MovingSingularity)->Unit(benchmark::kMillisecond);
