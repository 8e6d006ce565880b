// Serial reference vs OpenMP kernels for the direction sweep and the grid
// oracle. Run: ./inbox_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include <cmath>

#include "inbox/mair2d.hpp"
#include "inbox/oracle.hpp"

namespace {

using namespace inbox;

ConvexSet bench_polygon() {
    // a fixed 12-gon on the convex curve r = 1 + 0.15 cos(2a)
    std::vector<Vector2d> verts;
    for (int k = 0; k < 12; ++k) {
        const double a = 2.0 * M_PI * k / 12.0;
        const double r = 1.0 + 0.15 * std::cos(2.0 * a);
        verts.emplace_back(r * std::cos(a), r * std::sin(a));
    }
    return polygon_to_halfspaces(make_polygon(std::move(verts)));
}

void bm_sweep(benchmark::State& state) {
    const ConvexSet set = bench_polygon();
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const SweepResult r = mair_sweep(set, 0.02, {}, threads);
        benchmark::DoNotOptimize(r.samples[r.winner_index].area);
    }
}

void bm_oracle_mair(benchmark::State& state) {
    const ConvexSet set = bench_polygon();
    const int threads = static_cast<int>(state.range(0));
    GridSpec grid;
    grid.anchor_steps = 72;
    grid.size_steps = 72;
    grid.angle_steps = 8;
    for (auto _ : state) {
        const double area = brute_mair(set, grid, threads).area;
        benchmark::DoNotOptimize(area);
    }
}

void bm_profile(benchmark::State& state) {
    const ConvexSet set = bench_polygon();
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const auto prof = f_profile(set, 33, {}, threads);
        benchmark::DoNotOptimize(prof.back().area);
    }
}

}  // namespace

BENCHMARK(bm_sweep)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_oracle_mair)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_profile)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
