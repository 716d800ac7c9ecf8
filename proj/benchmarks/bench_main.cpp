#include "optocool/propagation.hpp"
#include "optocool/steady_state.hpp"
#include "optocool/sweeps.hpp"

#include <benchmark/benchmark.h>

using namespace optocool;

static void BM_PropagateFig2(benchmark::State& state) {
    const auto pt = point_setup(figure_preset(FigurePreset::fig2), 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(pt.params, pt.drive, pt.mf0, pt.controls).back().n_phonon);
    }
}
BENCHMARK(BM_PropagateFig2)->Unit(benchmark::kMillisecond);

static void BM_OracleFig1(benchmark::State& state) {
    const auto pt = point_setup(figure_preset(FigurePreset::fig1), 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate_oracle(pt.params, pt.drive, pt.mf0, 10.0, 1e-3).r(3, 1));
    }
}
BENCHMARK(BM_OracleFig1)->Unit(benchmark::kMillisecond);

static void BM_SteadyState(benchmark::State& state) {
    const SystemParams p{.delta = 0.5, .kappa = 0.3, .gamma = 1e-6, .coupling_a = 0.0,
                         .coupling_b = 2e-4, .n_th = 50.0};
    for (auto _ : state) benchmark::DoNotOptimize(solve_steady_state(p, 1000.0).n_total);
}
BENCHMARK(BM_SteadyState)->Unit(benchmark::kMillisecond);

static void BM_Sweep(benchmark::State& state) {
    auto spec = figure_preset(FigurePreset::fig4d, 4);
    spec.base.controls.t_end = 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec, static_cast<unsigned>(state.range(0))).values);
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
