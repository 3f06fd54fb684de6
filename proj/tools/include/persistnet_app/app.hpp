#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "persistnet/layer_series.hpp"
#include "persistnet/persistence.hpp"
#include "persistnet/portfolio.hpp"
#include "persistnet/regime_fit.hpp"

namespace persistnet::app {

struct RunConfig {
    std::filesystem::path input;
    std::size_t window = 126;
    double theta = 46.0;
    std::size_t n_starts = 200;
    std::size_t max_shift = 900;
    std::size_t top_k = 10;
    std::size_t n_random = 100000;
    std::size_t n_selections = 1000;
    std::size_t selection_size = 25;
    std::size_t min_evaluation_days = 60;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::optional<std::size_t> assets;  // keep only the first N assets
    TriangleClassing classing = TriangleClassing::Unified;
    ZeroScorePolicy zero_policy = ZeroScorePolicy::CapAtSmallestPositive;
    std::filesystem::path out_root;  // empty: $PERSISTNET_OUT, then "runs"
    std::string run_name;            // empty: timestamped
    std::optional<std::filesystem::path> analysis_dir;
};

// Throws ConfigError for inconsistent settings that can be caught before
// any data is read.
void check_config(const RunConfig& cfg);

// Fitted curves for every motif class plus the scores derived from them.
struct Analysis {
    std::shared_ptr<const ReturnPanel> returns;
    std::vector<DroppedDate> dropped;
    std::shared_ptr<const LayerSeries> series;
    std::map<MotifKind, PersistenceCurve> curves;
    std::map<MotifKind, TwoRegimeFit> fits;
    std::vector<RankedMotif> top_triangles;   // at the triangle breakpoint
    std::vector<RankedMotif> top_tetrahedra;  // at the tetrahedron breakpoint
    NodePersistence node_scores;              // at the tetrahedron breakpoint
    std::vector<OverlapRow> overlap;
    TriangleCorrelationSummary triangle_correlation;
    EvaluationSplit split;
};

std::shared_ptr<const ReturnPanel> load_returns(const RunConfig& cfg, std::vector<DroppedDate>* dropped = nullptr);
LayerConfig layer_config(const RunConfig& cfg);
Analysis analyze(const RunConfig& cfg);

struct PortfolioResults {
    MotifVsRandomReport motif_vs_random;
    VolVsPersistReport vol_vs_persist;
};

PortfolioResults run_portfolios(const ReturnPanel& returns, const std::vector<Motif>& top,
                                const NodePersistence& scores, const EvaluationSplit& split, const RunConfig& cfg);

// Directory the command writes into; created if missing.
std::filesystem::path resolve_run_dir(const RunConfig& cfg, const std::string& command);

void write_analysis(const Analysis& a, const RunConfig& cfg, const std::filesystem::path& dir);
void write_portfolios(const PortfolioResults& p, const RunConfig& cfg, const std::filesystem::path& dir);

// Subcommand drivers. Each returns the run directory.
std::filesystem::path cmd_analyze(const RunConfig& cfg);
std::filesystem::path cmd_portfolio(const RunConfig& cfg);
std::filesystem::path cmd_synth(const std::filesystem::path& scenario, const RunConfig& cfg);

// Full command line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace persistnet::app
