// Serial reference vs OpenMP for the batch kernels.

#include "thermops/kernels.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

using namespace thermops;

const Vector& fig_state() {
    static const Vector p = (Vector(3) << 0.8, 0.16, 0.04).finished();
    return p;
}

const Vector& fig_gibbs() {
    static const Vector g = gibbs_weights(SystemSpec::ladder(3), std::log(2.0));
    return g;
}

Execution mode(const benchmark::State& s) { return s.range(0) == 0 ? Execution::serial : Execution::parallel; }

void BM_SupportSweep(benchmark::State& state) {
    const auto dirs = simplex_plane_directions(360);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::support_sweep(fig_state(), fig_gibbs(), dirs, mode(state)));
}

void BM_EltoPoints(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(kernels::elto_points(fig_state(), fig_gibbs(), 6, 2000, 7, mode(state)));
}

void BM_StoPoints(benchmark::State& state) {
    const BathSpec bath = BathSpec::from_q(0.5, 20);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::sto_points(fig_state(), bath, 2000, 7, mode(state)));
}

void BM_Membership(benchmark::State& state) {
    const auto pts = kernels::elto_points(fig_state(), fig_gibbs(), 6, 500, 7, Execution::serial);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::membership_batch(pts, fig_state(), fig_gibbs(), 1e-9, mode(state)));
}

void BM_MergeSweep(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::merge_sweep(0.5, 20, 1000, 7, BathTail::identity, mode(state)));
}

}  // namespace

// Arg 0: serial reference, 1: OpenMP.
BENCHMARK(BM_SupportSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EltoPoints)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StoPoints)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Membership)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MergeSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
