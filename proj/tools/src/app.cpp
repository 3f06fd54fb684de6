#include "persistnet_app/app.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "persistnet/errors.hpp"
#include "persistnet/ingest.hpp"
#include "persistnet/report_io.hpp"
#include "persistnet/synth.hpp"

namespace persistnet::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kModule = "cli";
constexpr const char* kVersion = "0.1.0";
constexpr MotifKind kKinds[] = {MotifKind::Edge, MotifKind::Triangle, MotifKind::Separator, MotifKind::Tetrahedron};

std::string classing_name(TriangleClassing c) { return c == TriangleClassing::Strict ? "strict" : "unified"; }

std::string policy_name(ZeroScorePolicy p) { return p == ZeroScorePolicy::Exclude ? "exclude" : "cap"; }

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError(kModule, "cannot read " + p.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string hex(std::uint64_t v) {
    std::ostringstream s;
    s << std::hex;
    s.width(16);
    s.fill('0');
    s << v;
    return s.str();
}

// Writes `text` to dir/name and records its size and hash.
void emit(const fs::path& dir, const std::string& name, const std::string& text, json& artifacts) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw IoError(kModule, "cannot write " + (dir / name).string());
    out << text;
    if (!out) throw IoError(kModule, "write failed for " + (dir / name).string());
    artifacts[name] = {{"bytes", text.size()}, {"fnv1a64", hex(fnv1a(text))}};
}

json config_json(const RunConfig& cfg) {
    json j = {
        {"input", cfg.input.string()},
        {"window", cfg.window},
        {"theta", cfg.theta},
        {"T", cfg.n_starts},
        {"max_shift", cfg.max_shift},
        {"top_k", cfg.top_k},
        {"n_random", cfg.n_random},
        {"n_selections", cfg.n_selections},
        {"selection_size", cfg.selection_size},
        {"min_evaluation_days", cfg.min_evaluation_days},
        {"seed", cfg.seed},
        {"classing", classing_name(cfg.classing)},
        {"zero_policy", policy_name(cfg.zero_policy)},
    };
    j["assets"] = cfg.assets ? json(*cfg.assets) : json(nullptr);
    return j;
}

void write_manifest(const fs::path& dir, const std::string& command, json config, std::uint64_t seed,
                    const fs::path& input, json artifacts, json extra = json::object()) {
    json m = {
        {"tool", "persistnet"},
        {"version", kVersion},
        {"command", command},
        {"config", std::move(config)},
        {"seed", seed},
        {"artifacts", std::move(artifacts)},
    };
    if (!input.empty() && fs::exists(input)) {
        m["input_fnv1a64"] = hex(fnv1a(read_file(input)));
    }
    for (auto& [k, v] : extra.items()) m[k] = v;
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    out << m.dump(2) << '\n';
}

std::string timestamp_name() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "run-%Y%m%d-%H%M%S", &tm);
    return buf;
}

}  // namespace

void check_config(const RunConfig& cfg) {
    if (cfg.window < 2) throw ConfigError(kModule, "window must be at least 2");
    if (!(cfg.theta > 0.0)) throw ConfigError(kModule, "theta must be positive");
    if (cfg.n_starts == 0) throw ConfigError(kModule, "T must be at least 1");
    if (cfg.top_k == 0) throw ConfigError(kModule, "top-k must be at least 1");
    if (cfg.selection_size == 0) throw ConfigError(kModule, "selection size must be at least 1");
    if (cfg.assets) {
        if (*cfg.assets < 4) throw ConfigError(kModule, "at least 4 assets are needed for a TMFG");
        if (*cfg.assets >= cfg.window) {
            throw ConfigError(kModule, "N < window required: " + std::to_string(*cfg.assets) +
                                           " assets need a window longer than " + std::to_string(*cfg.assets) +
                                           " days, got " + std::to_string(cfg.window));
        }
    }
}

std::shared_ptr<const ReturnPanel> load_returns(const RunConfig& cfg, std::vector<DroppedDate>* dropped) {
    if (cfg.input.empty()) throw ConfigError(kModule, "no input file given");
    auto loaded = load_prices(cfg.input);
    if (dropped) *dropped = loaded.dropped;
    auto r = log_returns(loaded.panel);
    if (cfg.assets) {
        if (*cfg.assets > r.n_assets()) {
            throw ConfigError(kModule, "requested " + std::to_string(*cfg.assets) + " assets, input has " +
                                           std::to_string(r.n_assets()));
        }
        r = select_assets(r, *cfg.assets);
    }
    return std::make_shared<const ReturnPanel>(std::move(r));
}

LayerConfig layer_config(const RunConfig& cfg) {
    LayerConfig lc;
    lc.window = cfg.window;
    lc.theta = cfg.theta;
    lc.n_starts = cfg.n_starts;
    lc.max_shift = cfg.max_shift;
    lc.threads = cfg.threads;
    return lc;
}

Analysis analyze(const RunConfig& cfg) {
    check_config(cfg);
    Analysis a;
    a.returns = load_returns(cfg, &a.dropped);
    a.series = std::make_shared<const LayerSeries>(LayerSeries::build(a.returns, layer_config(cfg)));
    const auto& s = *a.series;
    a.split = split_after_series(s, cfg.min_evaluation_days);

    for (MotifKind k : kKinds) {
        a.curves[k] = persistence_curve(s, k, cfg.classing);
        a.fits[k] = fit_two_regimes(a.curves[k]);
    }
    const auto triangles = score_universe(s, MotifKind::Triangle, a.fits[MotifKind::Triangle].tau_plat, cfg.classing);
    const auto cliques =
        score_universe(s, MotifKind::Tetrahedron, a.fits[MotifKind::Tetrahedron].tau_plat, cfg.classing);
    a.top_triangles = top_ranked(triangles, cfg.top_k);
    a.top_tetrahedra = top_ranked(cliques, cfg.top_k);
    a.node_scores = node_persistence(s.n_vertices(), cliques);
    a.overlap = overlap_report(s, a.top_triangles, cfg.top_k);
    a.triangle_correlation = triangle_correlation_relation(s, triangles);
    return a;
}

PortfolioResults run_portfolios(const ReturnPanel& returns, const std::vector<Motif>& top,
                                const NodePersistence& scores, const EvaluationSplit& split, const RunConfig& cfg) {
    PortfolioResults p;
    MotifVsRandomConfig mc;
    mc.n_random = cfg.n_random;
    mc.seed = cfg.seed;
    mc.threads = cfg.threads;
    p.motif_vs_random = run_experiment_motif_vs_random(returns, top, split, mc);

    VolVsPersistConfig vc;
    vc.n_selections = cfg.n_selections;
    vc.selection_size = cfg.selection_size;
    // Offset so the two experiments never share a derived seed.
    vc.seed = cfg.seed + cfg.n_random;
    vc.zero_policy = cfg.zero_policy;
    vc.threads = cfg.threads;
    p.vol_vs_persist = run_experiment_vol_vs_persist(returns, scores, split, vc);
    return p;
}

fs::path resolve_run_dir(const RunConfig& cfg, const std::string& command) {
    fs::path root = cfg.out_root;
    if (root.empty()) {
        const char* env = std::getenv("PERSISTNET_OUT");
        root = (env && *env) ? fs::path(env) : fs::path("runs");
    }
    fs::path dir;
    if (!cfg.run_name.empty()) {
        dir = root / cfg.run_name;
    } else {
        const auto base = timestamp_name() + "-" + command;
        dir = root / base;
        for (int i = 1; fs::exists(dir); ++i) dir = root / (base + "-" + std::to_string(i));
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(kModule, "cannot create output directory " + dir.string() + ": " + ec.message());
    return dir;
}

namespace {

json analysis_artifacts(const Analysis& a, const fs::path& dir) {
    const auto& assets = a.returns->assets;
    json artifacts = json::object();
    {
        std::ostringstream s;
        write_curve_csv_header(s);
        for (MotifKind k : kKinds) write_curve_csv_rows(s, a.curves.at(k));
        emit(dir, "curves.csv", s.str(), artifacts);
    }
    for (MotifKind k : kKinds) {
        std::ostringstream s;
        write_fit_json(s, k, a.fits.at(k));
        emit(dir, "fit_" + std::string(to_string(k)) + ".json", s.str(), artifacts);
    }
    {
        std::ostringstream s;
        write_ranking_json(s, a.top_triangles, assets);
        emit(dir, "ranking_triangle.json", s.str(), artifacts);
    }
    {
        std::ostringstream s;
        write_ranking_json(s, a.top_tetrahedra, assets);
        emit(dir, "ranking_tetrahedron.json", s.str(), artifacts);
    }
    {
        std::ostringstream s;
        write_node_persistence_csv(s, a.node_scores, assets);
        emit(dir, "node_persistence.csv", s.str(), artifacts);
    }
    {
        std::ostringstream s;
        write_overlap_csv(s, a.overlap);
        emit(dir, "overlap.csv", s.str(), artifacts);
    }
    {
        std::ostringstream s;
        write_triangle_correlation_csv(s, a.triangle_correlation, assets);
        emit(dir, "triangle_correlation.csv", s.str(), artifacts);
    }
    {
        std::ostringstream s;
        write_dropped_report(s, a.dropped);
        emit(dir, "dropped_dates.csv", s.str(), artifacts);
    }
    return artifacts;
}

json analysis_extra(const Analysis& a) {
    json tau = json::object();
    for (const auto& [k, f] : a.fits) tau[std::string(to_string(k))] = f.tau_plat;
    return {
        {"n_assets", a.returns->n_assets()},
        {"n_days", a.returns->n_days()},
        {"tau_plat", tau},
        {"split", {{"estimation_end", a.split.estimation_end}, {"evaluation_end", a.split.evaluation_end}}},
    };
}

json portfolio_artifacts(const PortfolioResults& p, const fs::path& dir) {
    json artifacts = json::object();
    {
        std::ostringstream csv, js;
        write_motif_vs_random(csv, js, p.motif_vs_random);
        emit(dir, "motif_vs_random.csv", csv.str(), artifacts);
        emit(dir, "motif_vs_random.json", js.str(), artifacts);
    }
    {
        std::ostringstream csv, js;
        write_vol_vs_persist(csv, js, p.vol_vs_persist);
        emit(dir, "vol_vs_persist.csv", csv.str(), artifacts);
        emit(dir, "vol_vs_persist.json", js.str(), artifacts);
    }
    return artifacts;
}

}  // namespace

void write_analysis(const Analysis& a, const RunConfig& cfg, const fs::path& dir) {
    write_manifest(dir, "analyze", config_json(cfg), cfg.seed, cfg.input, analysis_artifacts(a, dir),
                   analysis_extra(a));
}

void write_portfolios(const PortfolioResults& p, const RunConfig& cfg, const fs::path& dir) {
    write_manifest(dir, "portfolio", config_json(cfg), cfg.seed, cfg.input, portfolio_artifacts(p, dir));
}

fs::path cmd_analyze(const RunConfig& cfg) {
    const auto a = analyze(cfg);
    const auto dir = resolve_run_dir(cfg, "analyze");
    write_analysis(a, cfg, dir);
    return dir;
}

fs::path cmd_portfolio(const RunConfig& cfg) {
    check_config(cfg);
    if (!cfg.analysis_dir) {
        // No saved analysis: compute it inline and keep its artifacts next to
        // the portfolio reports.
        const auto a = analyze(cfg);
        const auto dir = resolve_run_dir(cfg, "portfolio");
        std::vector<Motif> top;
        for (const auto& r : a.top_triangles) top.push_back(r.motif);
        const auto p = run_portfolios(*a.returns, top, a.node_scores, a.split, cfg);
        auto artifacts = analysis_artifacts(a, dir);
        const auto portfolio_files = portfolio_artifacts(p, dir);
        for (const auto& [k, v] : portfolio_files.items()) artifacts[k] = v;
        write_manifest(dir, "portfolio", config_json(cfg), cfg.seed, cfg.input, std::move(artifacts),
                       analysis_extra(a));
        return dir;
    }

    const fs::path& adir = *cfg.analysis_dir;
    json manifest;
    try {
        manifest = json::parse(read_file(adir / "manifest.json"));
    } catch (const json::exception& e) {
        throw ValidationError(kModule, "malformed analysis manifest in " + adir.string() + ": " + e.what());
    }
    // The analysis run fixes the data and window setup; only experiment
    // parameters come from this invocation.
    RunConfig run = cfg;
    try {
        const auto& c = manifest.at("config");
        run.input = c.at("input").get<std::string>();
        run.window = c.at("window").get<std::size_t>();
        run.theta = c.at("theta").get<double>();
        run.n_starts = c.at("T").get<std::size_t>();
        run.max_shift = c.at("max_shift").get<std::size_t>();
        run.assets = c.at("assets").is_null() ? std::nullopt : std::optional(c.at("assets").get<std::size_t>());
        if (!cfg.input.empty()) run.input = cfg.input;
        const auto returns = load_returns(run);
        const auto split = split_after(manifest.at("split").at("estimation_end").get<std::size_t>(),
                                       returns->n_days(), cfg.min_evaluation_days);
        std::ifstream rank_in(adir / "ranking_triangle.json");
        if (!rank_in) throw IoError(kModule, "cannot read " + (adir / "ranking_triangle.json").string());
        auto top = read_ranking_json(rank_in, returns->assets);
        std::ifstream np_in(adir / "node_persistence.csv");
        if (!np_in) throw IoError(kModule, "cannot read " + (adir / "node_persistence.csv").string());
        const auto scores = read_node_persistence_csv(np_in, returns->assets);
        if (top.size() > cfg.top_k) top.resize(cfg.top_k);
        const auto p = run_portfolios(*returns, top, scores, split, run);
        const auto dir = resolve_run_dir(cfg, "portfolio");
        write_manifest(dir, "portfolio", config_json(run), run.seed, run.input, portfolio_artifacts(p, dir),
                       {{"analysis", adir.string()}});
        return dir;
    } catch (const json::exception& e) {
        throw ValidationError(kModule, "analysis manifest in " + adir.string() + " lacks a field: " + e.what());
    }
}

fs::path cmd_synth(const fs::path& scenario, const RunConfig& cfg) {
    const auto spec = load_scenario(scenario);
    const auto prices = generate_prices(spec);
    const auto dir = resolve_run_dir(cfg, "synth");
    json artifacts = json::object();
    std::ostringstream s;
    write_prices_csv(s, prices);
    emit(dir, "prices.csv", s.str(), artifacts);
    json truth = json::array();
    for (const auto& m : ground_truth_motifs(spec)) {
        json names = json::array();
        for (Vertex v : m.vertices) names.push_back(prices.assets.at(static_cast<std::size_t>(v)));
        truth.push_back({{"kind", std::string(to_string(m.kind))}, {"vertices", names}});
    }
    emit(dir, "ground_truth.json", truth.dump(2) + "\n", artifacts);
    json blocks = json::array();
    for (const auto& b : spec.blocks) {
        json jb = {{"members", b.members}, {"correlation", b.correlation}, {"active_begin", b.active_begin}};
        if (b.active_end != std::numeric_limits<std::size_t>::max()) jb["active_end"] = b.active_end;
        blocks.push_back(jb);
    }
    const json config = {
        {"scenario", scenario.string()},
        {"n_assets", spec.n_assets},
        {"n_days", spec.n_days},
        {"base_volatility", spec.base_volatility},
        {"start_date", spec.start_date},
        {"blocks", blocks},
    };
    write_manifest(dir, "synth", config, spec.seed, scenario, std::move(artifacts));
    return dir;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App cli{"Motif persistence analysis of filtered correlation networks"};
    cli.require_subcommand(1);
    RunConfig cfg;
    std::string classing = "unified";
    std::string policy = "cap";
    std::string analysis;
    std::size_t assets = 0;
    fs::path scenario;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_root, "Output root (default $PERSISTNET_OUT or ./runs)");
        sub->add_option("--run-name", cfg.run_name, "Run directory name (default timestamped)");
        sub->add_option("--threads", cfg.threads, "Worker threads (0 = hardware)")->capture_default_str();
    };
    auto add_analysis = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input, "Price CSV with header date,asset,close");
        sub->add_option("--window", cfg.window, "Correlation window in days")->capture_default_str();
        sub->add_option("--theta", cfg.theta, "Exponential smoothing constant")->capture_default_str();
        sub->add_option("--T", cfg.n_starts, "Number of starting layers")->capture_default_str();
        sub->add_option("--max-shift", cfg.max_shift, "Largest layer shift")->capture_default_str();
        sub->add_option("--top-k", cfg.top_k, "Motifs kept in rankings")->capture_default_str();
        sub->add_option("--assets", assets, "Use only the first N assets");
        sub->add_option("--classing", classing, "Triangle matching: unified or strict")
            ->check(CLI::IsMember({"unified", "strict"}))
            ->capture_default_str();
        sub->add_option("--min-eval-days", cfg.min_evaluation_days, "Minimum out-of-sample days")
            ->capture_default_str();
    };

    auto* analyze_cmd = cli.add_subcommand("analyze", "Persistence curves, fits, rankings and node scores");
    add_analysis(analyze_cmd);
    add_common(analyze_cmd);

    auto* portfolio_cmd = cli.add_subcommand("portfolio", "Motif-vs-random and 1/sigma-vs-1/P_m experiments");
    add_analysis(portfolio_cmd);
    add_common(portfolio_cmd);
    portfolio_cmd->add_option("--analysis", analysis, "Reuse artifacts of an analyze run");
    portfolio_cmd->add_option("--n-random", cfg.n_random, "Random portfolios")->capture_default_str();
    portfolio_cmd->add_option("--n-selections", cfg.n_selections, "Paired selections")->capture_default_str();
    portfolio_cmd->add_option("--selection-size", cfg.selection_size, "Assets per selection")->capture_default_str();
    portfolio_cmd->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
    portfolio_cmd->add_option("--zero-policy", policy, "Zero-score assets: cap or exclude")
        ->check(CLI::IsMember({"cap", "exclude"}))
        ->capture_default_str();

    auto* synth_cmd = cli.add_subcommand("synth", "Generate a synthetic price panel from a scenario file");
    synth_cmd->add_option("scenario", scenario, "Scenario JSON")->required();
    add_common(synth_cmd);

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return cli.exit(e, out, err);
    }

    if (assets > 0) cfg.assets = assets;
    if (!analysis.empty()) cfg.analysis_dir = fs::path(analysis);
    cfg.classing = classing == "strict" ? TriangleClassing::Strict : TriangleClassing::Unified;
    cfg.zero_policy = policy == "exclude" ? ZeroScorePolicy::Exclude : ZeroScorePolicy::CapAtSmallestPositive;
    if (cfg.threads == 0) cfg.threads = std::max(1u, std::thread::hardware_concurrency());

    try {
        fs::path dir;
        if (*analyze_cmd) {
            dir = cmd_analyze(cfg);
        } else if (*portfolio_cmd) {
            dir = cmd_portfolio(cfg);
        } else {
            dir = cmd_synth(scenario, cfg);
        }
        out << dir.string() << '\n';
        return 0;
    } catch (const Error& e) {
        err << e.module() << ": " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "persistnet: " << e.what() << '\n';
    }
    return 1;
}

}  // namespace persistnet::app
