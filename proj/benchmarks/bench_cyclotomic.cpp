#include <benchmark/benchmark.h>

#include "tilespec/cyclotomic.hpp"

using tilespec::Cyc;
using tilespec::Field;
using tilespec::Rat;

static void BM_CycMul(benchmark::State& state) {
  const Field* f = Field::of_order(5);
  Cyc a(f, {Rat(3, 7), Rat(-2, 5), Rat(11, 3), Rat(1, 2)});
  Cyc b(f, {Rat(-1, 9), Rat(4, 7), Rat(0), Rat(5, 6)});
  for (auto _ : state) {
    Cyc c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_CycMul);

static void BM_CycInverse(benchmark::State& state) {
  const Field* f = Field::of_order(5);
  Cyc a(f, {Rat(3, 7), Rat(-2, 5), Rat(11, 3), Rat(1, 2)});
  for (auto _ : state) {
    Cyc c = a.inverse();
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_CycInverse);

BENCHMARK_MAIN();
