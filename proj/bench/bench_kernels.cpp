// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <map>

#include "cfl/baselines.hpp"
#include "cfl/facloc.hpp"
#include "cfl/generate.hpp"
#include "cfl/radii.hpp"
#include "cfl/ruling_set.hpp"

namespace {

auto instance(std::size_t n) -> const cfl::MetricInstance& {
  static std::map<std::size_t, cfl::MetricInstance> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, cfl::generate({.n = n, .cost_low = 0.01, .cost_high = 0.5, .seed = n})).first;
  }
  return it->second;
}

template <bool Parallel>
void BM_ComputeR(benchmark::State& state) {
  const auto& inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? cfl::compute_r(inst) : cfl::serial::compute_r(inst));
  }
}

template <bool Parallel>
void BM_MinPlus(benchmark::State& state) {
  const auto& inst = instance(static_cast<std::size_t>(state.range(0)));
  const auto r = cfl::compute_r(inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? cfl::min_plus_transform(inst, r)
                                      : cfl::serial::min_plus_transform(inst, r));
  }
}

template <bool Parallel>
void BM_Triangle(benchmark::State& state) {
  const auto& inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? cfl::find_triangle_violation(inst.n(), inst.matrix())
                                      : cfl::serial::find_triangle_violation(inst.n(), inst.matrix()));
  }
}

template <bool Parallel>
void BM_BruteForce(benchmark::State& state) {
  const auto& inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? cfl::brute_force_opt(inst) : cfl::serial::brute_force_opt(inst));
  }
}

template <bool Parallel>
void BM_Solve(benchmark::State& state) {
  const auto& inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cfl::solve(inst, {.seed = 1, .parallel = Parallel}).cost);
  }
}

void BM_RulingSet(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = cfl::random_gnp(n, 0.1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(cfl::ruling_set::run(g, {.seed = 1}).rounds);
}

}  // namespace

BENCHMARK(BM_ComputeR<false>)->Arg(512)->Arg(2048);
BENCHMARK(BM_ComputeR<true>)->Arg(512)->Arg(2048);
BENCHMARK(BM_MinPlus<false>)->Arg(512)->Arg(2048);
BENCHMARK(BM_MinPlus<true>)->Arg(512)->Arg(2048);
BENCHMARK(BM_Triangle<false>)->Arg(256)->Arg(512);
BENCHMARK(BM_Triangle<true>)->Arg(256)->Arg(512);
BENCHMARK(BM_BruteForce<false>)->Arg(12)->Arg(16);
BENCHMARK(BM_BruteForce<true>)->Arg(12)->Arg(16);
BENCHMARK(BM_Solve<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_Solve<true>)->Arg(256)->Arg(1024);
BENCHMARK(BM_RulingSet)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
