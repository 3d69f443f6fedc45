#include <benchmark/benchmark.h>

#include "coflow/io.hpp"
#include "coflow/relaxations.hpp"
#include "coflow/sched_divisible.hpp"
#include "coflow/sched_indivisible.hpp"

namespace {

coflow::CoflowInstance make_instance(int ports, int cores, int coflows) {
  coflow::GeneratorParams params;
  params.seed = 12345;
  params.ports = ports;
  params.cores = cores;
  params.num_coflows = coflows;
  params.flow_density = 0.4;
  params.max_size = 8;
  params.max_release = 10;
  params.max_weight = 4;
  return coflow::generate(params);
}

void BM_DivisibleLp(benchmark::State& state) {
  const auto instance = make_instance(static_cast<int>(state.range(0)), 2, 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(coflow::solve_divisible_lp(instance));
}
BENCHMARK(BM_DivisibleLp)->Arg(3)->Arg(4)->Arg(6);

void BM_IndivisibleLp(benchmark::State& state) {
  const auto instance =
      make_instance(4, 2, static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(coflow::solve_indivisible_lp(instance));
}
BENCHMARK(BM_IndivisibleLp)->Arg(4)->Arg(8)->Arg(12);

void BM_ScheduleDivisible(benchmark::State& state) {
  const auto instance = make_instance(4, 2, static_cast<int>(state.range(0)));
  const auto lp = coflow::solve_divisible_lp(instance);
  for (auto _ : state)
    benchmark::DoNotOptimize(coflow::schedule_divisible(instance, lp));
}
BENCHMARK(BM_ScheduleDivisible)->Arg(4)->Arg(8);

void BM_ScheduleIndivisible(benchmark::State& state) {
  const auto instance = make_instance(4, 2, static_cast<int>(state.range(0)));
  const auto lp = coflow::solve_indivisible_lp(instance);
  for (auto _ : state)
    benchmark::DoNotOptimize(coflow::schedule_indivisible(instance, lp));
}
BENCHMARK(BM_ScheduleIndivisible)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
