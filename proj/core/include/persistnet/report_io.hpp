#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "persistnet/persistence.hpp"
#include "persistnet/portfolio.hpp"
#include "persistnet/regime_fit.hpp"

namespace persistnet {

// CSV `kind,tau,value`; several curves may share one file.
void write_curve_csv_header(std::ostream& out);
void write_curve_csv_rows(std::ostream& out, const PersistenceCurve& curve);

// JSON list of {vertices, kind, plateau_persistence}.
void write_ranking_json(std::ostream& out, const std::vector<RankedMotif>& ranked,
                        const std::vector<std::string>& assets);
std::vector<Motif> read_ranking_json(std::istream& in, const std::vector<std::string>& assets);

// {kind, exponent_decay, exponent_plateau, tau_plat, mse_decay, mse_plateau, combined_mse}
void write_fit_json(std::ostream& out, MotifKind kind, const TwoRegimeFit& fit);

// CSV `asset,score`.
void write_node_persistence_csv(std::ostream& out, const NodePersistence& np, const std::vector<std::string>& assets);
NodePersistence read_node_persistence_csv(std::istream& in, const std::vector<std::string>& assets);

void write_overlap_csv(std::ostream& out, const std::vector<OverlapRow>& rows);
void write_triangle_correlation_csv(std::ostream& out, const TriangleCorrelationSummary& summary,
                                    const std::vector<std::string>& assets);

// Distribution CSV `portfolio_id,volatility` and JSON summary.
void write_motif_vs_random(std::ostream& csv, std::ostream& json, const MotifVsRandomReport& rep);

// Paired CSV `selection_id,vol_weighted,persist_weighted` and JSON summary.
void write_vol_vs_persist(std::ostream& csv, std::ostream& json, const VolVsPersistReport& rep);

// Shortest round-trip representation used by every writer.
std::string format_number(double v);

}  // namespace persistnet
