#include "spinom/dynamics.hpp"
#include "spinom/entanglement.hpp"
#include "spinom/presets.hpp"
#include "spinom/sweep.hpp"

#include <benchmark/benchmark.h>

namespace {

spinom::ModelConfig working_point()
{
    spinom::ModelConfig c;
    c.params.J = spinom::derive_constants(c.params).kappa;
    c.drive.P = 0.02;
    c.drive.Delta_c = 1.0 * c.params.omega_m;
    c.drive.Omega = 8e3;
    return c;
}

void BM_SteadyState(benchmark::State& state)
{
    const auto c = working_point();
    const auto d = spinom::derive_constants(c.params);
    for (auto _ : state) benchmark::DoNotOptimize(spinom::steady_state(c.params, d, c.drive, c.solver));
}
BENCHMARK(BM_SteadyState);

void BM_Lyapunov(benchmark::State& state)
{
    const auto c = working_point();
    const auto d = spinom::derive_constants(c.params);
    const auto s = spinom::steady_state(c.params, d, c.drive, c.solver);
    const auto A = spinom::build_drift(c.params, d, s);
    const auto D = spinom::build_diffusion(c.params, d);
    for (auto _ : state) benchmark::DoNotOptimize(spinom::solve_lyapunov(A, D));
}
BENCHMARK(BM_Lyapunov);

void BM_StabilityReport(benchmark::State& state)
{
    const auto c = working_point();
    const auto d = spinom::derive_constants(c.params);
    const auto s = spinom::steady_state(c.params, d, c.drive, c.solver);
    const auto A = spinom::build_drift(c.params, d, s);
    for (auto _ : state) benchmark::DoNotOptimize(spinom::stability(A, c.params, d, s));
}
BENCHMARK(BM_StabilityReport);

void BM_EvaluatePoint(benchmark::State& state)
{
    const auto c = working_point();
    const std::vector<std::string> outputs{"E_N", "N", "G_abs"};
    for (auto _ : state) benchmark::DoNotOptimize(spinom::evaluate_point(c, outputs));
}
BENCHMARK(BM_EvaluatePoint);

// Detuning line of the one-way preset, coarsened to 41 points per direction.
void BM_SmallSweep(benchmark::State& state)
{
    auto spec = spinom::preset("fig2");
    spec.axes.front().count = 41;
    spinom::RunOptions opts;
    opts.workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(spinom::run_sweep(spec, opts));
    state.SetItemsProcessed(state.iterations() * 41 * 2);
}
BENCHMARK(BM_SmallSweep)->Arg(1)->Arg(2)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
