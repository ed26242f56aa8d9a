#include <benchmark/benchmark.h>

#include <vector>

#include "hoskip/coverage.hpp"
#include "hoskip/montecarlo.hpp"

using namespace hoskip;

namespace {

const std::vector<SchemeSpec> kSchemes(std::begin(kAnalyticSchemes), std::end(kAnalyticSchemes));

std::vector<double> thresholds() {
  std::vector<double> t;
  for (double db : uniform_grid(-10.0, 20.0, 1.0)) t.push_back(db_to_linear(db));
  return t;
}

SimulationSpec spec(benchmark::State& state) {
  SimulationSpec s;
  s.trials = static_cast<std::uint64_t>(state.range(0));
  return s;
}

void BM_SimulateParallel(benchmark::State& state) {
  const auto t = thresholds();
  const SimulationSpec s = spec(state);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(kSchemes, NetworkParams{}, s, t));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SimulateSerial(benchmark::State& state) {
  const auto t = thresholds();
  const SimulationSpec s = spec(state);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_serial(kSchemes, NetworkParams{}, s, t));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CurveParallel(benchmark::State& state) {
  const auto g = uniform_grid(-10.0, 20.0, 1.0);
  const SchemeSpec s = kAnalyticSchemes[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(coverage_curve(s, NetworkParams{}, g));
}

void BM_CurveSerial(benchmark::State& state) {
  const auto g = uniform_grid(-10.0, 20.0, 1.0);
  const SchemeSpec s = kAnalyticSchemes[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(coverage_curve_serial(s, NetworkParams{}, g));
}

}  // namespace

BENCHMARK(BM_SimulateParallel)->Arg(20000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SimulateSerial)->Arg(20000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CurveParallel)->DenseRange(0, 4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CurveSerial)->DenseRange(0, 4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
