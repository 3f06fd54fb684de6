#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "persistnet/errors.hpp"
#include "persistnet/portfolio.hpp"
#include "persistnet/stats.hpp"
#include "persistnet/synth.hpp"

using namespace persistnet;

namespace {

// Columns alternate +s, -s with the given scales.
ReturnPanel alternating(const std::vector<double>& scales, std::size_t days) {
    ReturnPanel r;
    r.assets = synthetic_asset_ids(scales.size());
    r.dates = business_days("2020-01-01", days);
    r.values.resize(static_cast<Eigen::Index>(days), static_cast<Eigen::Index>(scales.size()));
    for (std::size_t d = 0; d < days; ++d) {
        for (std::size_t j = 0; j < scales.size(); ++j) {
            r.values(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(j)) = (d % 2 ? -1.0 : 1.0) * scales[j];
        }
    }
    return r;
}

double weight(const Portfolio& p, const std::string& a) { return p.holdings.at(a); }

const ReturnPanel& small_panel() {
    static const ReturnPanel r = [] {
        ScenarioSpec spec;
        spec.n_assets = 30;
        spec.n_days = 300;
        spec.seed = 5;
        spec.blocks = {{{0, 1, 2, 3}, 0.8}};
        return generate(spec);
    }();
    return r;
}

}  // namespace

TEST(Weighting, InverseVolatility) {
    const auto r = alternating({1.0, 2.0, 4.0}, 40);
    const auto two = weights_inverse_volatility(r, {"A000", "A001"}, 0, 39);
    EXPECT_NEAR(weight(two, "A000"), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(weight(two, "A001"), 1.0 / 3.0, 1e-15);
    const auto three = weights_inverse_volatility(r, r.assets, 0, 39);
    EXPECT_NEAR(weight(three, "A000"), 4.0 / 7.0, 1e-15);
    EXPECT_NEAR(weight(three, "A001"), 2.0 / 7.0, 1e-15);
    EXPECT_NEAR(weight(three, "A002"), 1.0 / 7.0, 1e-15);
    EXPECT_NO_THROW(check_simplex(three));
}

TEST(Weighting, InverseVolatilityErrors) {
    auto r = alternating({1.0, 0.0}, 10);
    EXPECT_THROW(weights_inverse_volatility(r, {"A000", "A001"}, 0, 9), DegenerateAssetError);
    EXPECT_THROW(weights_inverse_volatility(r, {"A000"}, 0, 10), BoundsError);
    EXPECT_THROW(weights_inverse_volatility(r, {"A000"}, 3, 3), InsufficientDataError);
    EXPECT_THROW(weights_inverse_volatility(r, {"ZZZ"}, 0, 9), ParameterError);
}

TEST(Weighting, InversePersistence) {
    const std::vector<std::string> all{"a", "b", "c"};
    NodePersistence np{{1.0, 2.0, 0.0}};
    const auto p = weights_inverse_persistence(np, all, {"a", "b"});
    EXPECT_NEAR(weight(p, "a"), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(weight(p, "b"), 1.0 / 3.0, 1e-15);

    NodePersistence z{{0.0, 2.0, 4.0}};
    const auto cap = weights_inverse_persistence(z, all, all, ZeroScorePolicy::CapAtSmallestPositive);
    EXPECT_NEAR(weight(cap, "a"), 0.4, 1e-15);
    EXPECT_NEAR(weight(cap, "b"), 0.4, 1e-15);
    EXPECT_NEAR(weight(cap, "c"), 0.2, 1e-15);
    const auto excl = weights_inverse_persistence(z, all, all, ZeroScorePolicy::Exclude);
    EXPECT_EQ(excl.size(), 2u);
    EXPECT_NEAR(weight(excl, "b"), 2.0 / 3.0, 1e-15);

    NodePersistence none{{0.0, 0.0, 0.0}};
    const auto flat = weights_inverse_persistence(none, all, all);
    EXPECT_NEAR(weight(flat, "c"), 1.0 / 3.0, 1e-15);
    EXPECT_THROW(weights_inverse_persistence(none, all, all, ZeroScorePolicy::Exclude), ParameterError);
    EXPECT_THROW(weights_inverse_persistence(np, all, {"q"}), ParameterError);
}

TEST(MotifPortfolio, DisjointTriangles) {
    const auto assets = synthetic_asset_ids(40);
    std::vector<Motif> top;
    for (Vertex i = 0; i < 10; ++i) top.push_back(make_motif(MotifKind::Triangle, {3 * i, 3 * i + 1, 3 * i + 2}));
    const auto p = motif_portfolio(top, assets);
    EXPECT_EQ(p.size(), 30u);
    for (const auto& [a, w] : p.holdings) EXPECT_NEAR(w, 1.0 / 30.0, 1e-15);
}

TEST(MotifPortfolio, OverlapDeduplicated) {
    const auto assets = synthetic_asset_ids(10);
    const auto p = motif_portfolio({make_motif(MotifKind::Triangle, {0, 1, 2}), make_motif(MotifKind::Triangle, {1, 2, 3})},
                                   assets);
    EXPECT_EQ(p.size(), 4u);
    for (const auto& [a, w] : p.holdings) EXPECT_EQ(w, 0.25);
    EXPECT_THROW(motif_portfolio({}, assets), ParameterError);
}

TEST(RandomPortfolio, InclusionFrequency) {
    const auto universe = synthetic_asset_ids(100);
    std::vector<std::size_t> hits(100, 0);
    const std::size_t draws = 100000;
    for (std::size_t i = 0; i < draws; ++i) {
        const auto p = sample_random_portfolio(universe, 25, derived_seed(42, i));
        ASSERT_EQ(p.size(), 25u);
        for (const auto& [a, w] : p.holdings) ++hits[static_cast<std::size_t>(std::stoi(a.substr(1)))];
    }
    for (auto h : hits) EXPECT_NEAR(static_cast<double>(h) / draws, 0.25, 0.01);
}

TEST(RandomPortfolio, Errors) {
    const auto universe = synthetic_asset_ids(5);
    EXPECT_THROW(sample_random_portfolio(universe, 6, 0), ParameterError);
    EXPECT_THROW(sample_random_portfolio(universe, 0, 0), ParameterError);
    EXPECT_EQ(sample_random_portfolio(universe, 5, 3).size(), 5u);
}

TEST(Volatility, HedgedPairIsFlat) {
    auto r = alternating({1.0, 1.0}, 20);
    r.values.col(1) = -r.values.col(0);
    const auto p = equal_weight(r.assets);
    EXPECT_EQ(out_of_sample_volatility(p, r, split_after(9, 20, 5)), 0.0);
}

TEST(Volatility, IndependentPair) {
    const std::size_t days = 40000;
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 0.01);
    ReturnPanel r;
    r.assets = {"x", "y"};
    r.dates = business_days("2000-01-03", days);
    r.values.resize(days, 2);
    for (std::size_t d = 0; d < days; ++d) {
        r.values(static_cast<Eigen::Index>(d), 0) = n(rng);
        r.values(static_cast<Eigen::Index>(d), 1) = n(rng);
    }
    const double v = out_of_sample_volatility(equal_weight(r.assets), r, split_after(99, days));
    EXPECT_NEAR(v, 0.01 / std::sqrt(2.0), 1e-4);
}

TEST(Split, Boundaries) {
    const auto s = split_after(574, 1300);
    EXPECT_EQ(s.estimation_end, 574u);
    EXPECT_EQ(s.evaluation_end, 1299u);
    EXPECT_EQ(s.evaluation_days(), 725u);
    EXPECT_THROW(split_after(99, 100), SplitError);
    EXPECT_THROW(split_after(50, 100), SplitError);
    EXPECT_NO_THROW(split_after(39, 100));
    const auto r = alternating({1.0}, 10);
    EXPECT_THROW(out_of_sample_volatility(equal_weight(r.assets), r, EvaluationSplit{5, 10}), SplitError);
}

TEST(Experiments, MotifVsRandomRule) {
    const auto& r = small_panel();
    const std::vector<Motif> top{make_motif(MotifKind::Triangle, {0, 1, 2}), make_motif(MotifKind::Triangle, {1, 2, 3})};
    const auto split = split_after(149, r.n_days());
    const auto rep = run_experiment_motif_vs_random(r, top, split, {500, 17, 1});
    ASSERT_EQ(rep.random_volatilities.size(), 500u);
    double below = 0.0;
    for (std::size_t i = 0; i < 500; ++i) {
        const auto p = sample_random_portfolio(r.assets, 4, 17 + i);
        EXPECT_EQ(rep.random_volatilities[i], out_of_sample_volatility(p, r, split));
        below += rep.random_volatilities[i] < rep.motif_volatility ? 1.0 : 0.0;
    }
    EXPECT_DOUBLE_EQ(rep.percentile, 100.0 * below / 500.0);
    // a highly correlated block is riskier than most random baskets
    EXPECT_GT(rep.percentile, 90.0);
    EXPECT_DOUBLE_EQ(rep.mean, mean(rep.random_volatilities));
}

TEST(Experiments, ThreadInvariance) {
    const auto& r = small_panel();
    const auto split = split_after(149, r.n_days());
    const std::vector<Motif> top{make_motif(MotifKind::Tetrahedron, {0, 1, 2, 3})};
    const auto a = run_experiment_motif_vs_random(r, top, split, {300, 9, 1});
    const auto b = run_experiment_motif_vs_random(r, top, split, {300, 9, 4});
    EXPECT_EQ(a.random_volatilities, b.random_volatilities);
    EXPECT_EQ(a.percentile, b.percentile);

    NodePersistence np;
    for (std::size_t i = 0; i < r.n_assets(); ++i) np.scores.push_back(i % 3 == 0 ? 0.0 : 0.1 * static_cast<double>(i));
    VolVsPersistConfig cfg;
    cfg.n_selections = 200;
    cfg.selection_size = 10;
    cfg.seed = 4;
    const auto x = run_experiment_vol_vs_persist(r, np, split, cfg);
    cfg.threads = 3;
    const auto y = run_experiment_vol_vs_persist(r, np, split, cfg);
    ASSERT_EQ(x.rows.size(), y.rows.size());
    for (std::size_t i = 0; i < x.rows.size(); ++i) {
        EXPECT_EQ(x.rows[i].vol_weighted, y.rows[i].vol_weighted);
        EXPECT_EQ(x.rows[i].persist_weighted, y.rows[i].persist_weighted);
    }
    EXPECT_EQ(x.selections, y.selections);
}

TEST(Experiments, VolVsPersistSummary) {
    const auto& r = small_panel();
    const auto split = split_after(149, r.n_days());
    NodePersistence np;
    for (std::size_t i = 0; i < r.n_assets(); ++i) np.scores.push_back(1.0 + static_cast<double>(i % 4));
    VolVsPersistConfig cfg;
    cfg.n_selections = 100;
    cfg.selection_size = 8;
    const auto rep = run_experiment_vol_vs_persist(r, np, split, cfg);
    std::vector<double> v, p;
    std::size_t wins = 0;
    for (const auto& row : rep.rows) {
        v.push_back(row.vol_weighted);
        p.push_back(row.persist_weighted);
        wins += row.persist_weighted < row.vol_weighted;
    }
    EXPECT_DOUBLE_EQ(rep.fraction_persist_wins, static_cast<double>(wins) / 100.0);
    EXPECT_DOUBLE_EQ(rep.p_value, welch_t_test(p, v).p_value);
    EXPECT_DOUBLE_EQ(rep.mean_vol, mean(v));

    NodePersistence short_np{{1.0}};
    EXPECT_THROW(run_experiment_vol_vs_persist(r, short_np, split, cfg), DimensionError);
}
