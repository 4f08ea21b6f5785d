// Serial reference vs OpenMP kernels on the preset workloads.
#include <benchmark/benchmark.h>

#include <omp.h>

#include "pshe/config.hpp"
#include "pshe/spinhall.hpp"
#include "pshe/sweep.hpp"

namespace {

void BM_SweepSerial(benchmark::State& state) {
  const pshe::RunConfig c = pshe::make_preset("fig6b");
  pshe::SweepSpec spec = c.sweep;
  spec.samples = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pshe::run_sweep_serial(c.scenario, spec));
  state.SetItemsProcessed(state.iterations() * spec.samples);
}

void BM_SweepParallel(benchmark::State& state) {
  const pshe::RunConfig c = pshe::make_preset("fig6b");
  pshe::SweepSpec spec = c.sweep;
  spec.samples = static_cast<int>(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(pshe::run_sweep(c.scenario, spec, threads));
  state.SetItemsProcessed(state.iterations() * spec.samples);
}

void BM_FindResonanceSerial(benchmark::State& state) {
  const pshe::RunConfig c = pshe::make_preset("fig4");
  for (auto _ : state) {
    benchmark::DoNotOptimize(pshe::find_resonance(c.scenario, c.resonance_window,
                                                  pshe::kResonanceScanPoints, 1));
  }
}

void BM_FindResonanceParallel(benchmark::State& state) {
  const pshe::RunConfig c = pshe::make_preset("fig4");
  for (auto _ : state) {
    benchmark::DoNotOptimize(pshe::find_resonance(c.scenario, c.resonance_window));
  }
}

void BM_CentroidOracle(benchmark::State& state) {
  const pshe::RunConfig c = pshe::make_preset("fig2");
  const pshe::Stack stack = c.scenario.build_stack();
  const pshe::Kinematics kin(c.scenario.lambda_um, 0.6);
  pshe::BeamSpec beam = pshe::BeamSpec::with_waist_in_wavelengths(c.scenario.lambda_um, 500.0);
  beam.samples = static_cast<int>(state.range(0));
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(pshe::centroid_shift_oracle(stack, kin, beam));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(2001)->Arg(20001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)
    ->ArgsProduct({{2001, 20001}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_FindResonanceSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FindResonanceParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CentroidOracle)
    ->ArgsProduct({{256, 512}, {1, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
