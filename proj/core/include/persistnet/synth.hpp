#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "persistnet/ingest.hpp"
#include "persistnet/motifs.hpp"

namespace persistnet {

struct BlockSpec {
    std::vector<std::size_t> members;  // asset indices
    double correlation = 0.0;
    // Active on days [active_begin, active_end).
    std::size_t active_begin = 0;
    std::size_t active_end = std::numeric_limits<std::size_t>::max();
};

struct ScenarioSpec {
    std::size_t n_assets = 0;
    std::size_t n_days = 0;
    std::vector<BlockSpec> blocks;
    double base_volatility = 0.01;
    std::uint64_t seed = 0;
    bool allow_overlap = false;
    std::string start_date = "2014-01-02";
};

// Throws SpecError on any violated ScenarioSpec invariant.
void validate(const ScenarioSpec& spec);

/// Gaussian returns with block correlation. For every distinct set of active
/// blocks the correlation matrix is Cholesky-factored once; each day draws
/// i.i.d. normals and applies the factor of that day's regime.
ReturnPanel generate(const ScenarioSpec& spec);

// Price panel starting at 100 on `start_date` whose log-returns are `generate(spec)`.
PricePanel generate_prices(const ScenarioSpec& spec);

// Asset ids "A000", "A001", ... (zero-padded so lexicographic = index order).
std::vector<std::string> synthetic_asset_ids(std::size_t n_assets);

// Weekday calendar starting at `start`.
std::vector<std::string> business_days(const std::string& start, std::size_t count);

/// Every triangle and tetrahedron inside a block that is active on all days.
std::vector<Motif> ground_truth_motifs(const ScenarioSpec& spec);

// JSON scenario file: n_assets, n_days, base_volatility, seed, optional
// allow_overlap / start_date, and blocks [{members, correlation,
// active_begin?, active_end?}].
ScenarioSpec load_scenario(const std::filesystem::path& path);
ScenarioSpec parse_scenario(const std::string& json_text);

}  // namespace persistnet
