#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>

#include "stretchlab/constructs.hpp"
#include "stretchlab/model.hpp"
#include "stretchlab/stretch.hpp"

using namespace stretchlab;

static void BM_Generate(benchmark::State& state) {
  const std::uint64_t n = state.range(0);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate({n, 0.5, seed++}));
  }
}
BENCHMARK(BM_Generate)->Arg(100)->Arg(400)->Arg(1600);

static void BM_StretchSparse(benchmark::State& state) {
  const std::uint64_t n = state.range(0);
  // near the connectivity threshold: heavy detours, row-based strategy
  const double p = std::min(1.0, 3.0 * std::log(static_cast<double>(n)) /
                                     static_cast<double>(n));
  std::uint64_t seed = 2;
  for (auto _ : state) {
    const EmbeddedGraph g = generate({n, p, seed++});
    benchmark::DoNotOptimize(stretch_factor(g));
  }
}
BENCHMARK(BM_StretchSparse)->Arg(100)->Arg(200)->Arg(400);

static void BM_StretchDense(benchmark::State& state) {
  const std::uint64_t n = state.range(0);
  // dense regime: the pair-pruned strategy touches few shortest-path rows
  std::uint64_t seed = 3;
  for (auto _ : state) {
    const EmbeddedGraph g = generate({n, 0.9, seed++});
    benchmark::DoNotOptimize(stretch_factor(g));
  }
}
BENCHMARK(BM_StretchDense)->Arg(200)->Arg(400)->Arg(800);

static void BM_Apsp(benchmark::State& state) {
  const std::uint64_t n = state.range(0);
  const EmbeddedGraph g = generate({n, 0.3, 4});
  for (auto _ : state) {
    benchmark::DoNotOptimize(apsp(g));
  }
}
BENCHMARK(BM_Apsp)->Arg(100)->Arg(200)->Arg(400);

static void BM_ThreePhase(benchmark::State& state) {
  const std::uint64_t n = state.range(0);
  // an even first-stage count near two percent of n
  const std::uint64_t k = std::max<std::uint64_t>(2, 2 * (n / 102));
  const double c = static_cast<double>(k) / static_cast<double>(n);
  std::uint64_t seed = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(three_phase_generate({n, 0.5, seed++}, c, 4.0));
  }
}
BENCHMARK(BM_ThreePhase)->Arg(101)->Arg(1000)->Arg(10000);
