#include <benchmark/benchmark.h>

#include "demonlab/markov.hpp"

using namespace demonlab;

static void BM_GeneratorSector(benchmark::State& state) {
  const FullModel model(SystemParams{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_generator(model, Controls{0, 0, 31.4}, {true, true, true}));
  }
}
BENCHMARK(BM_GeneratorSector)->Unit(benchmark::kMillisecond);

static void BM_Expm(benchmark::State& state) {
  const FullModel model(SystemParams{});
  const Generator gen = make_generator(model, Controls{}, {true, true, true},
                                       {.sector = state.range(0) == 184, .accumulate_currents = true});
  for (auto _ : state) benchmark::DoNotOptimize(Propagator::exponentiate(gen, 0.72));
}
BENCHMARK(BM_Expm)->Arg(184)->Arg(576)->Unit(benchmark::kMillisecond);

static void BM_SteadyState(benchmark::State& state) {
  const SystemParams p;
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(p));
}
BENCHMARK(BM_SteadyState)->Unit(benchmark::kMillisecond);

static void BM_CycleMapUncached(benchmark::State& state) {
  const SystemParams p;
  const FullModel model(p);
  const Schedule s = build_cycle(p);
  for (auto _ : state) benchmark::DoNotOptimize(cycle_map(model, s, {}, nullptr));
}
BENCHMARK(BM_CycleMapUncached)->Unit(benchmark::kMillisecond);

static void BM_ConvergedTransfer(benchmark::State& state) {
  SystemParams p;
  p.T_cycle = 1.0;
  const bool validate = state.range(0) != 0;
  for (auto _ : state) {
    PropagatorCache cache;
    benchmark::DoNotOptimize(converged_transfer(p, {.validate = validate, .cache = &cache}));
  }
}
BENCHMARK(BM_ConvergedTransfer)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_ReducedTransfer(benchmark::State& state) {
  SystemParams p;
  p.gamma = 30.0;
  for (auto _ : state) {
    PropagatorCache cache;
    benchmark::DoNotOptimize(build_reduced_cycle(p, {.validate = false, .cache = &cache}));
  }
}
BENCHMARK(BM_ReducedTransfer)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
