#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "persistnet/errors.hpp"
#include "persistnet/report_io.hpp"

using namespace persistnet;

TEST(ReportIo, FormatNumberRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 12345.678, 0.0}) {
        EXPECT_EQ(std::stod(format_number(v)), v);
    }
    EXPECT_EQ(format_number(0.5), "0.5");
}

TEST(ReportIo, CurveCsv) {
    PersistenceCurve c{MotifKind::Triangle, {0, 1}, {1.0, 0.75}};
    std::ostringstream out;
    write_curve_csv_header(out);
    write_curve_csv_rows(out, c);
    EXPECT_EQ(out.str(), "kind,tau,value\ntriangle,0,1\ntriangle,1,0.75\n");
}

TEST(ReportIo, RankingRoundTrip) {
    const std::vector<std::string> assets{"AAA", "BBB", "CCC", "DDD"};
    std::vector<RankedMotif> ranked{{make_motif(MotifKind::Triangle, {0, 2, 3}), 0.5},
                                    {make_motif(MotifKind::Tetrahedron, {0, 1, 2, 3}), 0.25}};
    std::stringstream io;
    write_ranking_json(io, ranked, assets);
    const auto doc = nlohmann::json::parse(io.str());
    EXPECT_EQ(doc.at(0).at("vertices"), nlohmann::json({"AAA", "CCC", "DDD"}));
    EXPECT_EQ(doc.at(1).at("plateau_persistence"), 0.25);
    io.seekg(0);
    const auto back = read_ranking_json(io, assets);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].vertices, ranked[0].motif.vertices);
    EXPECT_EQ(back[1].kind, MotifKind::Tetrahedron);

    std::istringstream bad(R"([{"vertices": ["ZZZ"], "kind": "edge"}])");
    EXPECT_THROW(read_ranking_json(bad, assets), ValidationError);
}

TEST(ReportIo, NodePersistenceRoundTrip) {
    const std::vector<std::string> assets{"x", "y", "z"};
    NodePersistence np{{0.1, 0.0, 1.0 / 3.0}};
    std::stringstream io;
    write_node_persistence_csv(io, np, assets);
    EXPECT_EQ(io.str().substr(0, 12), "asset,score\n");
    const auto back = read_node_persistence_csv(io, assets);
    EXPECT_EQ(back.scores, np.scores);

    std::istringstream missing("asset,score\nx,1\n");
    EXPECT_THROW(read_node_persistence_csv(missing, assets), ValidationError);
    std::istringstream header("name,score\n");
    EXPECT_THROW(read_node_persistence_csv(header, assets), ParseError);
}

TEST(ReportIo, FitJson) {
    TwoRegimeFit fit;
    fit.decay.exponent = -0.398;
    fit.plateau.exponent = -0.05;
    fit.tau_plat = 80;
    std::ostringstream out;
    write_fit_json(out, MotifKind::Triangle, fit);
    const auto doc = nlohmann::json::parse(out.str());
    EXPECT_EQ(doc.at("tau_plat"), 80);
    EXPECT_NEAR(doc.at("exponent_decay_adjusted").get<double>(), -0.398 / 3.0, 1e-15);
    for (const char* key : {"kind", "exponent_decay", "exponent_plateau", "mse_decay", "mse_plateau", "combined_mse"}) {
        EXPECT_TRUE(doc.contains(key)) << key;
    }
}

TEST(ReportIo, ExperimentHeaders) {
    MotifVsRandomReport m;
    m.motif.holdings = {{"a", 1.0}};
    m.random_volatilities = {0.5, 0.25};
    std::ostringstream csv, json;
    write_motif_vs_random(csv, json, m);
    EXPECT_EQ(csv.str(), "portfolio_id,volatility\n0,0.5\n1,0.25\n");
    EXPECT_EQ(nlohmann::json::parse(json.str()).at("n_portfolios"), 2);

    VolVsPersistReport v;
    v.rows = {{0, 0.5, 0.25}};
    v.fraction_persist_wins = 1.0;
    std::ostringstream csv2, json2;
    write_vol_vs_persist(csv2, json2, v);
    EXPECT_EQ(csv2.str(), "selection_id,vol_weighted,persist_weighted\n0,0.5,0.25\n");
    const auto doc = nlohmann::json::parse(json2.str());
    EXPECT_EQ(doc.at("fraction_persist_wins"), 1.0);
    EXPECT_TRUE(doc.contains("welch_p_value"));
}

TEST(ReportIo, OverlapCsv) {
    std::ostringstream out;
    write_overlap_csv(out, {{0, 125, 3}});
    EXPECT_EQ(out.str(), "layer,end_index,overlap\n0,125,3\n");
}
