#include "onecount/experiment.hpp"
#include "onecount/jc_oracle.hpp"
#include "onecount/jump_models.hpp"
#include "onecount/sweep.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace onecount;

void BM_ApplyJump(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto rho = prepare_thermal(1.0, Truncation::dimension(d));
  for (auto _ : state) benchmark::DoNotOptimize(apply_jump(JumpModel::a(), rho));
}
BENCHMARK(BM_ApplyJump)->Arg(16)->Arg(64)->Arg(256);

void BM_PredictPn(benchmark::State& state) {
  const auto chi = prepare_thermal(1.0).populations();
  for (auto _ : state) benchmark::DoNotOptimize(predict_pn(JumpModel::h(2.0), chi, 1));
}
BENCHMARK(BM_PredictPn);

void BM_JcUnitary(benchmark::State& state) {
  const JCParams params{2.0, state.range(0) ? UnitaryConstruction::SeriesExponential
                                            : UnitaryConstruction::AnalyticBlocks};
  for (auto _ : state) benchmark::DoNotOptimize(jc_unitary(params, 64));
}
BENCHMARK(BM_JcUnitary)->Arg(0)->Arg(1);

void BM_ConditionedFieldState(benchmark::State& state) {
  const auto rho = prepare_thermal(1.0, Truncation::dimension(64));
  for (auto _ : state) benchmark::DoNotOptimize(conditioned_field_state({2.0}, rho));
}
BENCHMARK(BM_ConditionedFieldState);

void BM_Fig4Sweep(benchmark::State& state) {
  const auto grid = Grid::uniform(1.0, 10.0, 1000);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_figure(Figure::Fig4, grid));
}
BENCHMARK(BM_Fig4Sweep);

void BM_RunExperiment(benchmark::State& state) {
  ExperimentConfig config;
  config.prep = {ThermalState{0.7}, Truncation::tolerance(kDefaultTailTolerance)};
  config.model = JumpModel::a();
  config.n_trials = static_cast<std::uint64_t>(state.range(0));
  config.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(config));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunExperiment)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
