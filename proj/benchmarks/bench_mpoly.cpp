#include <benchmark/benchmark.h>

#include "drinfeld/cremona.hpp"
#include "drinfeld/moore.hpp"

using namespace drinfeld;

static void BM_MooreDet(benchmark::State& state) {
  const TowerPtr F = tower_for_q(static_cast<std::uint64_t>(state.range(0)));
  const auto x = variables(F, static_cast<unsigned>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(moore_det(x));
}
BENCHMARK(BM_MooreDet)->Args({2, 3})->Args({2, 4})->Args({3, 3})->Unit(benchmark::kMicrosecond);

static void BM_MooreProduct(benchmark::State& state) {
  const TowerPtr F = tower_for_q(static_cast<std::uint64_t>(state.range(0)));
  const auto x = variables(F, static_cast<unsigned>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(moore_product(x));
}
BENCHMARK(BM_MooreProduct)->Args({2, 3})->Args({3, 3})->Unit(benchmark::kMicrosecond);

static void BM_PsiSquared(benchmark::State& state) {
  const TowerPtr F = tower_for_q(static_cast<std::uint64_t>(state.range(0)));
  const RationalMap psi = psi_map(static_cast<unsigned>(state.range(1)), F);
  for (auto _ : state) benchmark::DoNotOptimize(compose(psi, psi));
}
BENCHMARK(BM_PsiSquared)->Args({2, 2})->Args({3, 2})->Args({2, 3})->Unit(benchmark::kMillisecond);

static void BM_PolyMul(benchmark::State& state) {
  const TowerPtr F = tower_for_q(3);
  const auto x = variables(F, 3);
  const MPoly f = (x[0] + x[1] + x[2]).pow(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(f * f);
}
BENCHMARK(BM_PolyMul)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);
