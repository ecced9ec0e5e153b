#include <benchmark/benchmark.h>

#include "stretchlab/geom.hpp"
#include "stretchlab/rng.hpp"

using namespace stretchlab;

static void BM_DiscSquareArea(benchmark::State& state) {
  Xoshiro256PlusPlus rng(1);
  for (auto _ : state) {
    const Point q = sample_point(rng);
    const double r = rng.uniform() * kSqrt2;
    benchmark::DoNotOptimize(disc_square_area(q, r));
  }
}
BENCHMARK(BM_DiscSquareArea);

static void BM_SamplePoint(benchmark::State& state) {
  Xoshiro256PlusPlus rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_point(rng));
  }
}
BENCHMARK(BM_SamplePoint);
