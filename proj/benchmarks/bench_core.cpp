#include <benchmark/benchmark.h>

#include "usaphmp/usaphmp.hpp"

using namespace usaphmp;

namespace {

const Instance& instance_of(std::size_t n) {
  static const Instance small = generate_urand(100, 10, 1, {3.0, 0.75, 2.0});
  static const Instance large = generate_urand(400, 20, 1, {3.0, 0.75, 2.0});
  return n <= 100 ? small : large;
}

void BM_Objective(benchmark::State& state) {
  const auto& inst = instance_of(static_cast<std::size_t>(state.range(0)));
  const auto sol = initial_solution(inst);
  for (auto _ : state) {
    benchmark::DoNotOptimize(objective(inst, sol).raw_total);
  }
}
BENCHMARK(BM_Objective)->Arg(100)->Arg(400);

void BM_Correction(benchmark::State& state) {
  const auto& inst = instance_of(static_cast<std::size_t>(state.range(0)));
  auto rng = resolve_rng(1, 0, StreamRole::kVariation);
  const auto a = initial_solution(inst);
  const auto b = perturb(a, inst, rng, 3);
  for (auto _ : state) {
    auto children = crossover(a, b, rng);
    swap_hub(children.first, rng);
    benchmark::DoNotOptimize(correction(children.first, inst));
  }
}
BENCHMARK(BM_Correction)->Arg(100)->Arg(400);

void BM_Solve(benchmark::State& state) {
  const auto& inst = instance_of(100);
  GaParams params;
  params.islands = 4;
  params.pop_size = 16;
  params.inner_iters = 10;
  params.outer_iters = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(inst, params, FitnessMode::kRaw).raw_objective);
  }
}
BENCHMARK(BM_Solve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
