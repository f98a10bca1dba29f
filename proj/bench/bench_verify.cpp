#include <benchmark/benchmark.h>

#include "thermovisc/catalog.hpp"
#include "thermovisc/dynamics.hpp"
#include "thermovisc/verify.hpp"

using namespace thermovisc;

namespace {

const MaterialModel& maxwell() {
  static const auto m = make_model("maxwell3d-svk", MaterialParams{});
  return *m;
}

void run_check(benchmark::State& state, bool parallel) {
  CheckOptions o;
  o.samples = static_cast<std::size_t>(state.range(0));
  o.tol = 1e-11;
  o.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(check_internal_variable_frame_indifference(maxwell(), o));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FrameIndifferenceSerial(benchmark::State& state) { run_check(state, false); }
void BM_FrameIndifferenceParallel(benchmark::State& state) { run_check(state, true); }

void run_cp(benchmark::State& state, bool parallel) {
  CheckOptions o;
  o.samples = static_cast<std::size_t>(state.range(0));
  o.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(check_clausius_planck(maxwell(), o));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ClausiusPlanckSerial(benchmark::State& state) { run_cp(state, false); }
void BM_ClausiusPlanckParallel(benchmark::State& state) { run_cp(state, true); }

void BM_ShakeTenSeeds(benchmark::State& state) {
  MaterialParams p;
  const ComplexFluidModel fluid = make_complex_fluid("oldroyd-b", p);
  const std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  for (auto _ : state) benchmark::DoNotOptimize(shake_seeds(fluid, ShakeConfig{}, seeds));
}

}  // namespace

BENCHMARK(BM_FrameIndifferenceSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FrameIndifferenceParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClausiusPlanckSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClausiusPlanckParallel)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ShakeTenSeeds)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
