#include <memory>

#include <benchmark/benchmark.h>

#include "persistnet/persistence.hpp"
#include "persistnet/synth.hpp"

using namespace persistnet;

namespace {

const LayerSeries& series() {
    static const LayerSeries s = [] {
        ScenarioSpec spec;
        spec.n_assets = 60;
        spec.n_days = 126 + 20 + 200;
        spec.seed = 2;
        spec.blocks = {{{0, 1, 2, 3}, 0.85}};
        LayerConfig cfg;
        cfg.n_starts = 20;
        cfg.max_shift = 200;
        return LayerSeries::build(std::make_shared<const ReturnPanel>(generate(spec)), cfg);
    }();
    return s;
}

}  // namespace

static void BM_PersistenceCurve(benchmark::State& state) {
    const auto kind = static_cast<MotifKind>(state.range(0));
    const auto& s = series();
    for (auto _ : state) benchmark::DoNotOptimize(persistence_curve(s, kind));
}
BENCHMARK(BM_PersistenceCurve)
    ->Arg(static_cast<int>(MotifKind::Edge))
    ->Arg(static_cast<int>(MotifKind::Triangle))
    ->Arg(static_cast<int>(MotifKind::Tetrahedron))
    ->Unit(benchmark::kMillisecond);

static void BM_ScoreTriangleUniverse(benchmark::State& state) {
    const auto& s = series();
    for (auto _ : state) benchmark::DoNotOptimize(score_universe(s, MotifKind::Triangle, 60));
}
BENCHMARK(BM_ScoreTriangleUniverse)->Unit(benchmark::kMillisecond);
