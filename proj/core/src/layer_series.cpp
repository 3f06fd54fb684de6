#include "persistnet/layer_series.hpp"

#include "persistnet/errors.hpp"
#include "persistnet/parallel.hpp"

namespace persistnet {

namespace {
constexpr const char* kModule = "persistence";
}

std::size_t required_days(const LayerConfig& config) {
    const std::size_t first_end = config.first_end.value_or(config.window - 1);
    return first_end + config.n_starts + config.max_shift;
}

LayerSeries LayerSeries::build(std::shared_ptr<const ReturnPanel> returns, const LayerConfig& config) {
    if (!returns) throw ConfigError(kModule, "no return panel supplied");
    if (config.n_starts == 0) throw ConfigError(kModule, "number of starting layers must be at least 1");
    if (config.window < 2) throw ConfigError(kModule, "window length must be at least 2");
    if (returns->n_assets() < 4) {
        throw SizeError(kModule, "TMFG needs at least 4 assets, panel has " + std::to_string(returns->n_assets()));
    }
    if (config.window <= returns->n_assets()) {
        throw ConfigError(kModule, "window length " + std::to_string(config.window) +
                                       " must exceed the number of assets (N < window required, N = " +
                                       std::to_string(returns->n_assets()) + ")");
    }
    const std::size_t first_end = config.first_end.value_or(config.window - 1);
    if (first_end + 1 < config.window) {
        throw ConfigError(kModule, "first window end " + std::to_string(first_end) + " leaves fewer than " +
                                       std::to_string(config.window) + " days of history");
    }
    const std::size_t needed = required_days(config);
    if (needed > returns->n_days()) {
        throw ConfigError(kModule, "insufficient history: need " + std::to_string(needed) +
                                       " return days for window " + std::to_string(config.window) + ", T=" +
                                       std::to_string(config.n_starts) + ", max shift " +
                                       std::to_string(config.max_shift) + "; panel has " +
                                       std::to_string(returns->n_days()));
    }

    LayerSeries s;
    s.n_starts_ = config.n_starts;
    s.max_shift_ = config.max_shift;
    s.first_end_ = first_end;
    s.n_vertices_ = returns->n_assets();
    s.config_ = config;
    s.config_.first_end = first_end;
    s.returns_ = std::move(returns);

    const std::size_t count = config.n_starts + config.max_shift;
    s.layers_.resize(count);
    const WeightVector weights = exponential_weights(config.window, config.theta);
    parallel_for(count, config.threads, [&](std::size_t offset) {
        const auto window = slice_window(*s.returns_, static_cast<std::ptrdiff_t>(first_end + offset), config.window);
        require_non_degenerate(window);
        const auto corr = correlation_matrix(window, weights);
        s.layers_[offset] = extract_motifs(build_tmfg(corr, config.tmfg));
    });
    return s;
}

LayerSeries LayerSeries::from_catalogs(std::vector<MotifCatalog> layers, std::size_t n_starts,
                                       std::size_t max_shift) {
    if (n_starts == 0) throw ConfigError(kModule, "number of starting layers must be at least 1");
    if (layers.size() < n_starts + max_shift) {
        throw ConfigError(kModule, "need " + std::to_string(n_starts + max_shift) + " layers, got " +
                                       std::to_string(layers.size()));
    }
    LayerSeries s;
    s.n_starts_ = n_starts;
    s.max_shift_ = max_shift;
    std::size_t max_vertex = 0;
    for (const auto& cat : layers) {
        for (auto kind : {MotifKind::Edge, MotifKind::Triangle, MotifKind::Separator, MotifKind::Tetrahedron}) {
            for (MotifKey k : cat.of(kind)) {
                for (Vertex v : key_vertices(k)) max_vertex = std::max(max_vertex, static_cast<std::size_t>(v) + 1);
            }
        }
    }
    s.n_vertices_ = max_vertex;
    s.layers_ = std::move(layers);
    s.config_.n_starts = n_starts;
    s.config_.max_shift = max_shift;
    return s;
}

const ReturnPanel& LayerSeries::returns() const {
    if (!returns_) throw ConfigError(kModule, "layer series has no return panel attached");
    return *returns_;
}

CorrelationMatrix LayerSeries::correlation_at(std::size_t offset) const {
    const auto& r = returns();
    const auto window = slice_window(r, static_cast<std::ptrdiff_t>(end_index(offset)), config_.window);
    return correlation_matrix(window, exponential_weights(config_.window, config_.theta));
}

}  // namespace persistnet
