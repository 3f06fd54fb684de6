#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "persistnet/correlation.hpp"
#include "persistnet/ingest.hpp"
#include "persistnet/motifs.hpp"
#include "persistnet/tmfg.hpp"

namespace persistnet {

struct LayerConfig {
    std::size_t window = 126;
    double theta = 46.0;
    std::size_t n_starts = 200;   // T: starting layers t = 0 .. T-1
    std::size_t max_shift = 900;  // largest tau, inclusive
    // Return-panel row of the first window end; defaults to window - 1.
    std::optional<std::size_t> first_end;
    TmfgOptions tmfg;
    unsigned threads = 1;
};

/// TMFG motif catalogs for consecutive windows. Layers are stored once per
/// absolute offset: the layer for start t and shift tau is `at(t + tau)`.
class LayerSeries {
public:
    static LayerSeries build(std::shared_ptr<const ReturnPanel> returns, const LayerConfig& config);

    // Series over explicit catalogs, with no return panel attached.
    static LayerSeries from_catalogs(std::vector<MotifCatalog> layers, std::size_t n_starts, std::size_t max_shift);

    std::size_t n_starts() const { return n_starts_; }
    std::size_t max_shift() const { return max_shift_; }
    std::size_t size() const { return layers_.size(); }
    std::size_t n_vertices() const { return n_vertices_; }

    const MotifCatalog& at(std::size_t offset) const { return layers_.at(offset); }
    const MotifCatalog& layer(std::size_t start, std::size_t shift) const { return layers_.at(start + shift); }

    // Return-panel row at which the window for `offset` ends.
    std::size_t end_index(std::size_t offset) const { return first_end_ + offset; }

    bool has_returns() const { return returns_ != nullptr; }
    const ReturnPanel& returns() const;
    const LayerConfig& config() const { return config_; }

    // Unfiltered correlation matrix of the window behind layer `offset`.
    CorrelationMatrix correlation_at(std::size_t offset) const;

private:
    std::vector<MotifCatalog> layers_;
    std::size_t n_starts_ = 0;
    std::size_t max_shift_ = 0;
    std::size_t first_end_ = 0;
    std::size_t n_vertices_ = 0;
    LayerConfig config_;
    std::shared_ptr<const ReturnPanel> returns_;
};

// Number of return rows a configuration needs: first_end + T + max_shift.
std::size_t required_days(const LayerConfig& config);

}  // namespace persistnet
