#include <benchmark/benchmark.h>

#include "drinfeld/field.hpp"

using namespace drinfeld;

static void BM_FieldMul(benchmark::State& state) {
  const TowerPtr F = tower_for_q(static_cast<std::uint64_t>(state.range(0)), static_cast<unsigned>(state.range(1)));
  const std::uint32_t size = static_cast<std::uint32_t>(F->size());
  std::uint32_t a = 1, b = 2;
  for (auto _ : state) {
    Elem c = F->mul(Elem{a}, Elem{b});
    benchmark::DoNotOptimize(c);
    a = (a * 7 + 3) % size;
    b = (b * 5 + 1) % size;
  }
}
BENCHMARK(BM_FieldMul)->Args({2, 3})->Args({3, 3})->Args({4, 4});

static void BM_FieldAdd(benchmark::State& state) {
  const TowerPtr F = tower_for_q(static_cast<std::uint64_t>(state.range(0)), static_cast<unsigned>(state.range(1)));
  const std::uint32_t size = static_cast<std::uint32_t>(F->size());
  std::uint32_t a = 1, b = 2;
  for (auto _ : state) {
    Elem c = F->add(Elem{a}, Elem{b});
    benchmark::DoNotOptimize(c);
    a = (a * 7 + 3) % size;
    b = (b * 5 + 1) % size;
  }
}
BENCHMARK(BM_FieldAdd)->Args({2, 3})->Args({3, 3})->Args({4, 4});

static void BM_Frobenius(benchmark::State& state) {
  const TowerPtr F = tower_for_q(3, 4);
  std::uint32_t a = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(F->frobenius_q(Elem{a}, 1));
    a = (a * 7 + 3) % static_cast<std::uint32_t>(F->size());
  }
}
BENCHMARK(BM_Frobenius);

static void BM_Inverse(benchmark::State& state) {
  const TowerPtr F = tower_for_q(4, 3);
  std::uint32_t a = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(F->inv(Elem{a}));
    a = a % (static_cast<std::uint32_t>(F->size()) - 1) + 1;
  }
}
BENCHMARK(BM_Inverse);
