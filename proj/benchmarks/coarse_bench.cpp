#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "coarse/embed.hpp"
#include "coarse/expander.hpp"
#include "coarse/game.hpp"
#include "coarse/graph.hpp"
#include "coarse/metric_space.hpp"
#include "coarse/point_cloud.hpp"
#include "coarse/rng.hpp"

namespace {

coarse::RegularGraph cubic(int n) { return coarse::random_regular_graph(n, 3, 1234); }

coarse::PointCloud random_cloud(int n, int dim, double p, std::uint64_t seed) {
    coarse::SplitMix64 rng(seed);
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
    for (auto& pt : pts)
        for (double& x : pt) x = rng.next_gaussian();
    return coarse::PointCloud(pts, p);
}

void BM_GraphMetric(benchmark::State& state) {
    const auto g = cubic(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(coarse::graph_metric(g));
}
BENCHMARK(BM_GraphMetric)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_SpectralGap(benchmark::State& state) {
    const auto g = cubic(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(coarse::spectral_gap(g));
}
BENCHMARK(BM_SpectralGap)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_CheegerExact(benchmark::State& state) {
    const auto g = cubic(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(coarse::cheeger_exact(g));
}
BENCHMARK(BM_CheegerExact)->Arg(16)->Arg(20)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_MinimaxMeasure(benchmark::State& state) {
    const auto space = coarse::graph_metric(coarse::cycle_graph(static_cast<int>(state.range(0))));
    for (auto _ : state)
        benchmark::DoNotOptimize(coarse::minimax_measure(space, 2.0));
}
BENCHMARK(BM_MinimaxMeasure)->Arg(9)->Arg(11)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_ShellEmbedding(benchmark::State& state) {
    coarse::SplitMix64 rng(99);
    std::vector<std::vector<double>> pts(state.range(0), std::vector<double>(5));
    for (auto& pt : pts) {
        const double radius = std::exp2(10.0 * rng.next_double());
        double norm = 0.0;
        for (double& x : pt) {
            x = rng.next_gaussian();
            norm += x * x;
        }
        for (double& x : pt) x *= radius / std::sqrt(norm);
    }
    const coarse::PointCloud cloud(pts, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(coarse::shell_embedding(cloud, 2.0));
}
BENCHMARK(BM_ShellEmbedding)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Schoenberg(benchmark::State& state) {
    const auto cloud = random_cloud(static_cast<int>(state.range(0)), 10, 1.0, 77);
    for (auto _ : state) benchmark::DoNotOptimize(coarse::schoenberg_l1_to_l2(cloud));
}
BENCHMARK(BM_Schoenberg)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_GaussianMap(benchmark::State& state) {
    const auto space = coarse::graph_metric(coarse::path_graph(static_cast<int>(state.range(0))));
    for (auto _ : state)
        benchmark::DoNotOptimize(coarse::gaussian_dg_map(space, 3.0, 1.0));
}
BENCHMARK(BM_GaussianMap)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
