#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "persistnet/ingest.hpp"
#include "persistnet/persistence.hpp"

namespace persistnet {

/// Long-only portfolio keyed by asset id; weights are non-negative and sum
/// to one within 1e-12.
struct Portfolio {
    std::map<std::string, double> holdings;

    std::size_t size() const { return holdings.size(); }
};

// Normalises raw non-negative weights onto the simplex.
Portfolio make_portfolio(const std::vector<std::string>& assets, const std::vector<double>& raw_weights);
Portfolio equal_weight(const std::vector<std::string>& assets);
void check_simplex(const Portfolio& p);

/// Estimation uses return rows [0, estimation_end]; evaluation uses
/// (estimation_end, evaluation_end].
struct EvaluationSplit {
    std::size_t estimation_end = 0;
    std::size_t evaluation_end = 0;

    std::size_t evaluation_days() const { return evaluation_end - estimation_end; }
};

EvaluationSplit split_after(std::size_t estimation_end, std::size_t n_days, std::size_t min_evaluation_days = 60);
// Split after the last layer touched by the series (start T-1, shift max).
EvaluationSplit split_after_series(const LayerSeries& s, std::size_t min_evaluation_days = 60);

Portfolio motif_portfolio(const std::vector<Motif>& top, const std::vector<std::string>& assets);

Portfolio sample_random_portfolio(const std::vector<std::string>& universe, std::size_t size, std::uint64_t seed);

// sigma over return rows [first_row, last_row].
Portfolio weights_inverse_volatility(const ReturnPanel& r, const std::vector<std::string>& assets,
                                     std::size_t first_row, std::size_t last_row);

enum class ZeroScorePolicy {
    CapAtSmallestPositive,  // zero-score assets weighted as the smallest positive score
    Exclude,
};

Portfolio weights_inverse_persistence(const NodePersistence& np, const std::vector<std::string>& all_assets,
                                      const std::vector<std::string>& selection,
                                      ZeroScorePolicy policy = ZeroScorePolicy::CapAtSmallestPositive);

// Sample std (n - 1) of the daily portfolio return over the evaluation range.
double out_of_sample_volatility(const Portfolio& p, const ReturnPanel& r, const EvaluationSplit& split);

struct MotifVsRandomConfig {
    std::size_t n_random = 100000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct MotifVsRandomReport {
    Portfolio motif;
    double motif_volatility = 0.0;
    std::vector<double> random_volatilities;
    double percentile = 0.0;  // share of random portfolios below the motif one, in %
    double mean = 0.0;
    double median = 0.0;
    std::uint64_t seed = 0;
    EvaluationSplit split;
};

MotifVsRandomReport run_experiment_motif_vs_random(const ReturnPanel& r, const std::vector<Motif>& top,
                                                   const EvaluationSplit& split, const MotifVsRandomConfig& cfg);

struct VolVsPersistConfig {
    std::size_t n_selections = 1000;
    std::size_t selection_size = 25;
    std::uint64_t seed = 0;
    ZeroScorePolicy zero_policy = ZeroScorePolicy::CapAtSmallestPositive;
    unsigned threads = 1;
};

struct PairedRow {
    std::size_t selection_id;
    double vol_weighted;
    double persist_weighted;
};

struct VolVsPersistReport {
    std::vector<PairedRow> rows;
    std::vector<std::vector<std::string>> selections;
    double mean_vol = 0.0;
    double mean_persist = 0.0;
    double std_vol = 0.0;
    double std_persist = 0.0;
    double fraction_persist_wins = 0.0;
    double t_statistic = 0.0;
    double p_value = 1.0;  // Welch two-sample test between the two distributions
    std::uint64_t seed = 0;
    EvaluationSplit split;
};

VolVsPersistReport run_experiment_vol_vs_persist(const ReturnPanel& r, const NodePersistence& np,
                                                 const EvaluationSplit& split, const VolVsPersistConfig& cfg);

// Seed for the i-th derived draw of a master seed.
std::uint64_t derived_seed(std::uint64_t master, std::size_t index);

}  // namespace persistnet
