#include "persistnet/report_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "persistnet/errors.hpp"

namespace persistnet {

namespace {

constexpr const char* kModule = "report";

nlohmann::json names_of(const Motif& m, const std::vector<std::string>& assets) {
    nlohmann::json arr = nlohmann::json::array();
    for (Vertex v : m.vertices) arr.push_back(assets.at(static_cast<std::size_t>(v)));
    return arr;
}

std::unordered_map<std::string, Vertex> index_of(const std::vector<std::string>& assets) {
    std::unordered_map<std::string, Vertex> idx;
    for (std::size_t i = 0; i < assets.size(); ++i) idx.emplace(assets[i], static_cast<Vertex>(i));
    return idx;
}

nlohmann::json split_json(const EvaluationSplit& s) {
    return {{"estimation_end", s.estimation_end}, {"evaluation_end", s.evaluation_end}};
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_curve_csv_header(std::ostream& out) { out << "kind,tau,value\n"; }

void write_curve_csv_rows(std::ostream& out, const PersistenceCurve& curve) {
    for (std::size_t i = 0; i < curve.taus.size(); ++i) {
        out << to_string(curve.kind) << ',' << curve.taus[i] << ',' << format_number(curve.values[i]) << '\n';
    }
}

void write_ranking_json(std::ostream& out, const std::vector<RankedMotif>& ranked,
                        const std::vector<std::string>& assets) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : ranked) {
        arr.push_back({{"vertices", names_of(r.motif, assets)},
                       {"kind", std::string(to_string(r.motif.kind))},
                       {"plateau_persistence", r.plateau_persistence}});
    }
    out << arr.dump(2) << '\n';
}

std::vector<Motif> read_ranking_json(std::istream& in, const std::vector<std::string>& assets) {
    const auto idx = index_of(assets);
    std::vector<Motif> out;
    try {
        const auto doc = nlohmann::json::parse(in);
        for (const auto& row : doc) {
            std::vector<Vertex> v;
            for (const auto& name : row.at("vertices")) {
                auto it = idx.find(name.get<std::string>());
                if (it == idx.end()) throw ValidationError(kModule, "ranking names unknown asset " + name.dump());
                v.push_back(it->second);
            }
            out.push_back(make_motif(parse_motif_kind(row.at("kind").get<std::string>()), std::move(v)));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(kModule, std::string("malformed ranking JSON: ") + e.what());
    }
    return out;
}

void write_fit_json(std::ostream& out, MotifKind kind, const TwoRegimeFit& fit) {
    nlohmann::json doc = {
        {"kind", std::string(to_string(kind))},
        {"exponent_decay", fit.decay.exponent},
        {"exponent_plateau", fit.plateau.exponent},
        {"tau_plat", fit.tau_plat},
        {"mse_decay", fit.decay.mse},
        {"mse_plateau", fit.plateau.mse},
        {"combined_mse", fit.combined_mse},
    };
    if (kind == MotifKind::Triangle) {
        doc["exponent_decay_adjusted"] = adjusted_triangle_exponent(fit.decay.exponent);
    }
    if (!fit.warnings.empty()) doc["warnings"] = fit.warnings;
    out << doc.dump(2) << '\n';
}

void write_node_persistence_csv(std::ostream& out, const NodePersistence& np,
                                const std::vector<std::string>& assets) {
    out << "asset,score\n";
    for (std::size_t i = 0; i < np.scores.size(); ++i) {
        out << assets.at(i) << ',' << format_number(np.scores[i]) << '\n';
    }
}

NodePersistence read_node_persistence_csv(std::istream& in, const std::vector<std::string>& assets) {
    const auto idx = index_of(assets);
    NodePersistence np;
    np.scores.assign(assets.size(), 0.0);
    std::vector<char> seen(assets.size(), 0);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) {
            if (line != "asset,score") throw ParseError(kModule, 1, "expected header `asset,score`");
            continue;
        }
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError(kModule, line_no, "expected `asset,score`");
        auto it = idx.find(line.substr(0, comma));
        if (it == idx.end()) throw ParseError(kModule, line_no, "unknown asset " + line.substr(0, comma));
        double v = 0.0;
        const auto text = line.substr(comma + 1);
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw ParseError(kModule, line_no, "invalid score '" + text + "'");
        }
        np.scores[static_cast<std::size_t>(it->second)] = v;
        seen[static_cast<std::size_t>(it->second)] = 1;
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) throw ValidationError(kModule, "node persistence missing asset " + assets[i]);
    }
    return np;
}

void write_overlap_csv(std::ostream& out, const std::vector<OverlapRow>& rows) {
    out << "layer,end_index,overlap\n";
    for (const auto& r : rows) out << r.layer << ',' << r.end_index << ',' << r.overlap << '\n';
}

void write_triangle_correlation_csv(std::ostream& out, const TriangleCorrelationSummary& summary,
                                    const std::vector<std::string>& assets) {
    out << "vertices,plateau_persistence,mean_edge_sum,mean_edge_product\n";
    for (const auto& r : summary.rows) {
        std::string names;
        for (Vertex v : r.motif.vertices) {
            if (!names.empty()) names += ';';
            names += assets.at(static_cast<std::size_t>(v));
        }
        out << names << ',' << format_number(r.plateau_persistence) << ',' << format_number(r.mean_edge_sum) << ','
            << format_number(r.mean_edge_product) << '\n';
    }
}

void write_motif_vs_random(std::ostream& csv, std::ostream& json, const MotifVsRandomReport& rep) {
    csv << "portfolio_id,volatility\n";
    for (std::size_t i = 0; i < rep.random_volatilities.size(); ++i) {
        csv << i << ',' << format_number(rep.random_volatilities[i]) << '\n';
    }
    nlohmann::json holdings = nlohmann::json::object();
    for (const auto& [a, w] : rep.motif.holdings) holdings[a] = w;
    nlohmann::json doc = {
        {"experiment", "motif_vs_random"},
        {"seed", rep.seed},
        {"n_portfolios", rep.random_volatilities.size()},
        {"portfolio_size", rep.motif.size()},
        {"motif_volatility", rep.motif_volatility},
        {"percentile", rep.percentile},
        {"mean_vol", rep.mean},
        {"median_vol", rep.median},
        {"split", split_json(rep.split)},
        {"motif_holdings", holdings},
    };
    json << doc.dump(2) << '\n';
}

void write_vol_vs_persist(std::ostream& csv, std::ostream& json, const VolVsPersistReport& rep) {
    csv << "selection_id,vol_weighted,persist_weighted\n";
    for (const auto& r : rep.rows) {
        csv << r.selection_id << ',' << format_number(r.vol_weighted) << ',' << format_number(r.persist_weighted)
            << '\n';
    }
    nlohmann::json doc = {
        {"experiment", "vol_vs_persist"},
        {"seed", rep.seed},
        {"n_portfolios", rep.rows.size()},
        {"selection_size", rep.selections.empty() ? 0 : rep.selections.front().size()},
        {"mean_vol", rep.mean_vol},
        {"mean_persist", rep.mean_persist},
        {"std_vol", rep.std_vol},
        {"std_persist", rep.std_persist},
        {"fraction_persist_wins", rep.fraction_persist_wins},
        {"welch_t", rep.t_statistic},
        {"welch_p_value", rep.p_value},
        {"split", split_json(rep.split)},
    };
    json << doc.dump(2) << '\n';
}

}  // namespace persistnet
