#include <random>

#include <benchmark/benchmark.h>

#include "persistnet/correlation.hpp"
#include "persistnet/synth.hpp"

using namespace persistnet;

namespace {

ReturnWindow noise_window(std::size_t n_assets, std::size_t length) {
    ScenarioSpec spec;
    spec.n_assets = n_assets;
    spec.n_days = length;
    spec.seed = 1;
    const auto r = generate(spec);
    return slice_window(r, static_cast<std::ptrdiff_t>(length - 1), length);
}

}  // namespace

static void BM_WeightedKendallPair(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = normal(rng);
        y[i] = normal(rng);
    }
    const auto w = exponential_weights(n, 46.0);
    for (auto _ : state) benchmark::DoNotOptimize(weighted_kendall(x, y, w));
}
BENCHMARK(BM_WeightedKendallPair)->Arg(126)->Arg(252);

static void BM_CorrelationMatrix(benchmark::State& state) {
    const auto window = noise_window(static_cast<std::size_t>(state.range(0)), 126);
    const auto w = exponential_weights(126, 46.0);
    for (auto _ : state) benchmark::DoNotOptimize(correlation_matrix(window, w));
}
BENCHMARK(BM_CorrelationMatrix)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
