#include <benchmark/benchmark.h>

#include "cforge/aircraft.hpp"
#include "cforge/mission.hpp"

namespace {

using namespace cforge;

mission::TaskHyperparameters hyper() {
  mission::TaskHyperparameters h;
  h.chrg_gen = {0.3, 0.5};
  h.dsn_cons = {0.1, 0.2};
  h.sbo_cons = {0.2, 0.3};
  h.tcm_h_cons = {0.1, 0.15};
  h.tcm_dv_cons = {0.3, 0.4};
  h.dsn_rate = {0.2, 0.4};
  h.sbo_sgen = {0.1, 0.2};
  h.dsn_noise = {1.0, 2.0};
  h.chrg_noise = {0.5, 1.0};
  h.sbo_imp = {0.0, 0.3};
  h.tcm_dv_imp = {0.2, 0.3};
  h.tcm_dv_noise = {0.01, 0.02};
  return h;
}

void BM_BuildScenario(benchmark::State& state) {
  const auto seq = state.range(0) == 5 ? mission::canonical_sequence() : mission::long_sequence();
  const auto h = hyper();
  for (auto _ : state) benchmark::DoNotOptimize(mission::build_scenario(seq, h));
}
BENCHMARK(BM_BuildScenario)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Schedulability(benchmark::State& state) {
  const auto seq = mission::canonical_sequence();
  const auto scenario = mission::build_scenario(seq, hyper());
  const mission::OperationalRequirements req{40.0, 10.0, 80.0, 50.0};
  for (auto _ : state) benchmark::DoNotOptimize(mission::check_schedulable(scenario, req, seq.size()));
}
BENCHMARK(BM_Schedulability)->Unit(benchmark::kMillisecond);

void BM_EvaluateInstance(benchmark::State& state) {
  const auto hx = state.range(0) == 0 ? aircraft::HxKind::Fixed : aircraft::HxKind::Controlled;
  const aircraft::OperatingPoint op{15.0, 20000.0, 9.316, 0.429};
  const auto eps = aircraft::ToleranceVector::uniform(0.01);
  for (auto _ : state) benchmark::DoNotOptimize(aircraft::evaluate_instance(op, eps, hx));
}
BENCHMARK(BM_EvaluateInstance)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ExploreGrid(benchmark::State& state) {
  aircraft::ExploreConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(aircraft::explore_grid(config));
}
BENCHMARK(BM_ExploreGrid)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
