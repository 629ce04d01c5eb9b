#include <benchmark/benchmark.h>

#include "tfimqec/experiments.hpp"

namespace {

using namespace tfimqec;

ErasureExperiment experiment(std::size_t n) {
  ErasureExperiment exp;
  exp.n = n;
  exp.boundary = Boundary::Periodic;
  exp.p_h = 0.08;
  exp.logical_fraction = 0.5;
  exp.erasure = {ErasureModel::Bernoulli, 0.05, 0};
  return exp;
}

void sweep(benchmark::State& state, Execution execution) {
  const auto exp = experiment(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_success_counts(exp, 6, 64, 1, execution));
  }
  state.SetItemsProcessed(state.iterations() * 64);
}

void BM_SweepSerial(benchmark::State& state) { sweep(state, Execution::Serial); }
void BM_SweepParallel(benchmark::State& state) { sweep(state, Execution::Parallel); }

BENCHMARK(BM_SweepSerial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_EncoderConjugation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto code = CodeInstance::build(n, Boundary::Periodic, 4, {}, {});
  for (auto _ : state) {
    benchmark::DoNotOptimize(code.encoded_frame());
  }
}
BENCHMARK(BM_EncoderConjugation)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
