#include <random>

#include <benchmark/benchmark.h>

#include "persistnet/motifs.hpp"
#include "persistnet/tmfg.hpp"

using namespace persistnet;

namespace {

Eigen::MatrixXd random_matrix(int n) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m(i, j) = m(j, i) = u(rng);
    return m;
}

}  // namespace

static void BM_BuildTmfg(benchmark::State& state) {
    const auto m = random_matrix(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(build_tmfg(m));
}
BENCHMARK(BM_BuildTmfg)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_ExtractMotifs(benchmark::State& state) {
    const auto g = build_tmfg(random_matrix(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(extract_motifs(g));
}
BENCHMARK(BM_ExtractMotifs)->Arg(100);
