#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "persistnet/layer_series.hpp"
#include "persistnet/motifs.hpp"

namespace persistnet {

// How vertex triples are matched across layers. Unified: a triple is present
// whenever it is a triangle of the layer, face or separator. Strict: it must
// hold the same role (face vs separator) in both layers.
enum class TriangleClassing { Unified, Strict };

// Presence of a motif in one layer under the given classing.
bool motif_present(const Motif& motif, const MotifCatalog& catalog, TriangleClassing classing);

/// Soft persistence: the motif is present in both catalogs.
bool soft_persistent(const Motif& motif, const MotifCatalog& a, const MotifCatalog& b,
                     TriangleClassing classing = TriangleClassing::Unified);

/// Average persistence <P_m(X^tau)>_{T,C} for tau = 0..max_shift, where C is
/// the `kind` set of each starting layer.
struct PersistenceCurve {
    MotifKind kind = MotifKind::Edge;
    std::vector<std::size_t> taus;
    std::vector<double> values;
};

PersistenceCurve persistence_curve(const LayerSeries& s, MotifKind kind,
                                   TriangleClassing classing = TriangleClassing::Unified);

/// Plateau-averaged persistence of one motif:
///   1/T * 1/(max_shift - tau_plat) * sum_{t<T} sum_{tau in [tau_plat, max_shift)} P_m(c, t, t+tau)
double plateau_persistence(const LayerSeries& s, const Motif& motif, std::size_t tau_plat, std::size_t max_shift,
                           TriangleClassing classing = TriangleClassing::Unified);

// 1/T * sum_t P_m(c, t, t+tau).
double motif_persistence_at(const LayerSeries& s, const Motif& motif, std::size_t tau,
                            TriangleClassing classing = TriangleClassing::Unified);

/// Product of the three edge persistences of a triangle at shift tau; the
/// value motif persistence would take if edges persisted independently.
double edge_independence_product(const Motif& triangle, const LayerSeries& s, std::size_t tau);

/// Distinct motifs of `kind` appearing in any of the T starting layers.
std::vector<Motif> motif_universe(const LayerSeries& s, MotifKind kind);

struct RankedMotif {
    Motif motif;
    double plateau_persistence = 0.0;
};

// Plateau persistence for every motif of the universe, in universe order.
std::vector<RankedMotif> score_universe(const LayerSeries& s, MotifKind kind, std::size_t tau_plat,
                                        TriangleClassing classing = TriangleClassing::Unified);

// Top-k by plateau persistence; ties broken by ascending vertex tuple.
std::vector<RankedMotif> top_ranked(std::vector<RankedMotif> scored, std::size_t k);
std::vector<RankedMotif> rank_motifs(const LayerSeries& s, MotifKind kind, std::size_t tau_plat, std::size_t k,
                                     TriangleClassing classing = TriangleClassing::Unified);

/// Node score: sum of plateau persistence over the tetrahedral cliques
/// (union over starting layers) that contain the vertex.
struct NodePersistence {
    std::vector<double> scores;  // indexed by vertex
};

NodePersistence node_persistence(const LayerSeries& s, std::size_t tau_plat,
                                 TriangleClassing classing = TriangleClassing::Unified);

// Same, over an explicit scored clique universe.
NodePersistence node_persistence(std::size_t n_vertices, const std::vector<RankedMotif>& cliques);

struct Triplet {
    std::array<Vertex, 3> vertices;
    double mean_correlation;
};

// k triplets with the highest mean pairwise correlation; ties by tuple.
std::vector<Triplet> top_correlated_triplets(const CorrelationMatrix& m, std::size_t k);

std::size_t overlap_with_top_correlated(const std::vector<RankedMotif>& top_triangles, const CorrelationMatrix& m,
                                        std::size_t k);

struct OverlapRow {
    std::size_t layer;
    std::size_t end_index;
    std::size_t overlap;
};

// Overlap of the top-k persistent triangles with each starting layer's top-k
// correlated triplets.
std::vector<OverlapRow> overlap_report(const LayerSeries& s, const std::vector<RankedMotif>& top_triangles,
                                       std::size_t k);

/// Per-triangle comparison of plateau persistence with the average sum and
/// product of its edge correlations over the starting layers.
struct TriangleCorrelationRow {
    Motif motif;
    double plateau_persistence;
    double mean_edge_sum;
    double mean_edge_product;
};

struct TriangleCorrelationSummary {
    std::vector<TriangleCorrelationRow> rows;
    double pearson_sum = 0.0;
    double pearson_product = 0.0;
};

TriangleCorrelationSummary triangle_correlation_relation(const LayerSeries& s,
                                                         const std::vector<RankedMotif>& triangles);

}  // namespace persistnet
