#include "persistnet/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "persistnet/errors.hpp"
#include "persistnet/parallel.hpp"
#include "persistnet/stats.hpp"

namespace persistnet {

namespace {

constexpr const char* kModule = "portfolio";

std::unordered_map<std::string, std::size_t> column_index(const ReturnPanel& r) {
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < r.n_assets(); ++i) idx.emplace(r.assets[i], i);
    return idx;
}

std::size_t column_of(const std::unordered_map<std::string, std::size_t>& idx, const std::string& asset) {
    auto it = idx.find(asset);
    if (it == idx.end()) throw ParameterError(kModule, "asset " + asset + " not in return panel");
    return it->second;
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const auto mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

}  // namespace

Portfolio make_portfolio(const std::vector<std::string>& assets, const std::vector<double>& raw_weights) {
    if (assets.size() != raw_weights.size()) {
        throw DimensionError(kModule, "asset and weight counts differ");
    }
    if (assets.empty()) throw ParameterError(kModule, "portfolio needs at least one asset");
    double total = 0.0;
    for (double w : raw_weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ParameterError(kModule, "weights must be finite and non-negative");
        total += w;
    }
    if (!(total > 0.0)) throw ParameterError(kModule, "weights sum to zero");
    Portfolio p;
    for (std::size_t i = 0; i < assets.size(); ++i) {
        auto [it, inserted] = p.holdings.emplace(assets[i], raw_weights[i] / total);
        if (!inserted) throw ParameterError(kModule, "duplicate asset " + assets[i] + " in portfolio");
    }
    return p;
}

Portfolio equal_weight(const std::vector<std::string>& assets) {
    return make_portfolio(assets, std::vector<double>(assets.size(), 1.0));
}

void check_simplex(const Portfolio& p) {
    double total = 0.0;
    for (const auto& [asset, w] : p.holdings) {
        if (w < 0.0) throw ValidationError(kModule, "negative weight for " + asset);
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw ValidationError(kModule, "weights sum to " + std::to_string(total));
    }
}

EvaluationSplit split_after(std::size_t estimation_end, std::size_t n_days, std::size_t min_evaluation_days) {
    EvaluationSplit split;
    split.estimation_end = estimation_end;
    if (n_days == 0 || estimation_end + 1 >= n_days) {
        throw SplitError(kModule, "no return days after the estimation period");
    }
    split.evaluation_end = n_days - 1;
    if (split.evaluation_days() < min_evaluation_days) {
        throw SplitError(kModule, "evaluation range has " + std::to_string(split.evaluation_days()) +
                                      " days, need at least " + std::to_string(min_evaluation_days));
    }
    return split;
}

EvaluationSplit split_after_series(const LayerSeries& s, std::size_t min_evaluation_days) {
    return split_after(s.end_index(s.size() - 1), s.returns().n_days(), min_evaluation_days);
}

Portfolio motif_portfolio(const std::vector<Motif>& top, const std::vector<std::string>& assets) {
    if (top.empty()) throw ParameterError(kModule, "motif list is empty");
    std::set<std::string> members;
    for (const auto& m : top) {
        for (Vertex v : m.vertices) members.insert(assets.at(static_cast<std::size_t>(v)));
    }
    return equal_weight({members.begin(), members.end()});
}

std::uint64_t derived_seed(std::uint64_t master, std::size_t index) {
    return master + static_cast<std::uint64_t>(index);
}

Portfolio sample_random_portfolio(const std::vector<std::string>& universe, std::size_t size, std::uint64_t seed) {
    if (size == 0) throw ParameterError(kModule, "portfolio size must be at least 1");
    if (size > universe.size()) {
        throw ParameterError(kModule, "portfolio size " + std::to_string(size) + " exceeds universe of " +
                                          std::to_string(universe.size()));
    }
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> idx(universe.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // partial Fisher-Yates
    for (std::size_t i = 0; i < size; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    std::vector<std::string> chosen;
    chosen.reserve(size);
    for (std::size_t i = 0; i < size; ++i) chosen.push_back(universe[idx[i]]);
    return equal_weight(chosen);
}

Portfolio weights_inverse_volatility(const ReturnPanel& r, const std::vector<std::string>& assets,
                                     std::size_t first_row, std::size_t last_row) {
    if (last_row >= r.n_days() || first_row > last_row) {
        throw BoundsError(kModule, "estimation range outside return panel");
    }
    if (last_row - first_row + 1 < 2) {
        throw InsufficientDataError(kModule, "estimation range needs at least 2 days");
    }
    const auto idx = column_index(r);
    std::vector<double> raw;
    raw.reserve(assets.size());
    const auto rows = static_cast<Eigen::Index>(last_row - first_row + 1);
    for (const auto& a : assets) {
        const auto col = r.values.col(static_cast<Eigen::Index>(column_of(idx, a)))
                             .segment(static_cast<Eigen::Index>(first_row), rows);
        const std::vector<double> series(col.data(), col.data() + col.size());
        const double sigma = sample_std(series);
        if (!(sigma > 0.0)) throw DegenerateAssetError(kModule, "asset " + a + " has zero volatility");
        raw.push_back(1.0 / sigma);
    }
    return make_portfolio(assets, raw);
}

Portfolio weights_inverse_persistence(const NodePersistence& np, const std::vector<std::string>& all_assets,
                                      const std::vector<std::string>& selection, ZeroScorePolicy policy) {
    if (selection.empty()) throw ParameterError(kModule, "empty asset selection");
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < all_assets.size(); ++i) idx.emplace(all_assets[i], i);

    std::vector<double> scores;
    double smallest_positive = std::numeric_limits<double>::infinity();
    for (const auto& a : selection) {
        auto it = idx.find(a);
        if (it == idx.end()) throw ParameterError(kModule, "asset " + a + " has no persistence score");
        const double s = np.scores.at(it->second);
        scores.push_back(s);
        if (s > 0.0) smallest_positive = std::min(smallest_positive, s);
    }

    std::vector<std::string> kept;
    std::vector<double> raw;
    for (std::size_t i = 0; i < selection.size(); ++i) {
        if (scores[i] > 0.0) {
            kept.push_back(selection[i]);
            raw.push_back(1.0 / scores[i]);
        } else if (policy == ZeroScorePolicy::CapAtSmallestPositive) {
            kept.push_back(selection[i]);
            // no positive score at all: every asset gets the same weight
            raw.push_back(std::isfinite(smallest_positive) ? 1.0 / smallest_positive : 1.0);
        }
    }
    if (kept.empty()) {
        throw ParameterError(kModule, "every selected asset has zero persistence and was excluded");
    }
    return make_portfolio(kept, raw);
}

double out_of_sample_volatility(const Portfolio& p, const ReturnPanel& r, const EvaluationSplit& split) {
    if (split.evaluation_end >= r.n_days() || split.evaluation_end <= split.estimation_end) {
        throw SplitError(kModule, "evaluation range is empty or outside the return panel");
    }
    if (split.evaluation_days() < 2) {
        throw SplitError(kModule, "evaluation range needs at least 2 days for a volatility estimate");
    }
    const auto idx = column_index(r);
    std::vector<double> daily(split.evaluation_days(), 0.0);
    for (const auto& [asset, w] : p.holdings) {
        if (w == 0.0) continue;
        const auto col = static_cast<Eigen::Index>(column_of(idx, asset));
        for (std::size_t d = 0; d < daily.size(); ++d) {
            daily[d] += w * r.values(static_cast<Eigen::Index>(split.estimation_end + 1 + d), col);
        }
    }
    return sample_std(daily);
}

MotifVsRandomReport run_experiment_motif_vs_random(const ReturnPanel& r, const std::vector<Motif>& top,
                                                   const EvaluationSplit& split, const MotifVsRandomConfig& cfg) {
    if (cfg.n_random == 0) throw ParameterError(kModule, "need at least one random portfolio");
    MotifVsRandomReport rep;
    rep.seed = cfg.seed;
    rep.split = split;
    rep.motif = motif_portfolio(top, r.assets);
    rep.motif_volatility = out_of_sample_volatility(rep.motif, r, split);

    rep.random_volatilities.resize(cfg.n_random);
    const std::size_t size = rep.motif.size();
    parallel_for(cfg.n_random, cfg.threads, [&](std::size_t i) {
        const auto p = sample_random_portfolio(r.assets, size, derived_seed(cfg.seed, i));
        rep.random_volatilities[i] = out_of_sample_volatility(p, r, split);
    });

    double below = 0.0;
    for (double v : rep.random_volatilities) {
        if (v < rep.motif_volatility) below += 1.0;
        else if (v == rep.motif_volatility) below += 0.5;
    }
    rep.percentile = 100.0 * below / static_cast<double>(cfg.n_random);
    rep.mean = mean(rep.random_volatilities);
    rep.median = median_of(rep.random_volatilities);
    return rep;
}

VolVsPersistReport run_experiment_vol_vs_persist(const ReturnPanel& r, const NodePersistence& np,
                                                 const EvaluationSplit& split, const VolVsPersistConfig& cfg) {
    if (cfg.n_selections < 2) throw ParameterError(kModule, "need at least two random selections");
    if (np.scores.size() != r.n_assets()) {
        throw DimensionError(kModule, "node persistence covers " + std::to_string(np.scores.size()) +
                                          " assets, panel has " + std::to_string(r.n_assets()));
    }
    VolVsPersistReport rep;
    rep.seed = cfg.seed;
    rep.split = split;
    rep.rows.resize(cfg.n_selections);
    rep.selections.resize(cfg.n_selections);
    parallel_for(cfg.n_selections, cfg.threads, [&](std::size_t i) {
        const auto pick = sample_random_portfolio(r.assets, cfg.selection_size, derived_seed(cfg.seed, i));
        std::vector<std::string> names;
        for (const auto& [a, _] : pick.holdings) names.push_back(a);
        const auto vol = weights_inverse_volatility(r, names, 0, split.estimation_end);
        const auto per = weights_inverse_persistence(np, r.assets, names, cfg.zero_policy);
        rep.rows[i] = {i, out_of_sample_volatility(vol, r, split), out_of_sample_volatility(per, r, split)};
        rep.selections[i] = std::move(names);
    });

    std::vector<double> v, p;
    std::size_t wins = 0;
    for (const auto& row : rep.rows) {
        v.push_back(row.vol_weighted);
        p.push_back(row.persist_weighted);
        if (row.persist_weighted < row.vol_weighted) ++wins;
    }
    rep.mean_vol = mean(v);
    rep.mean_persist = mean(p);
    rep.std_vol = sample_std(v);
    rep.std_persist = sample_std(p);
    rep.fraction_persist_wins = static_cast<double>(wins) / static_cast<double>(rep.rows.size());
    const auto test = welch_t_test(p, v);
    rep.t_statistic = test.t;
    rep.p_value = test.p_value;
    return rep;
}

}  // namespace persistnet
