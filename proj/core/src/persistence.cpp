#include "persistnet/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "persistnet/errors.hpp"
#include "persistnet/parallel.hpp"
#include "persistnet/stats.hpp"

namespace persistnet {

namespace {

constexpr const char* kModule = "persistence";

std::size_t intersection_size(const std::vector<MotifKey>& a, const std::vector<MotifKey>& b) {
    std::size_t count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

bool present_key(MotifKind kind, MotifKey key, const MotifCatalog& catalog, TriangleClassing classing) {
    if ((kind == MotifKind::Triangle || kind == MotifKind::Separator) && classing == TriangleClassing::Unified) {
        return catalog.contains(MotifKind::Triangle, key) || catalog.contains(MotifKind::Separator, key);
    }
    return catalog.contains(kind, key);
}

// Motifs of the starting layer `from` found again in layer `to`.
std::size_t persisting_count(MotifKind kind, const MotifCatalog& from, const MotifCatalog& to,
                             TriangleClassing classing) {
    const auto& start = from.of(kind);
    if ((kind == MotifKind::Triangle || kind == MotifKind::Separator) && classing == TriangleClassing::Unified) {
        // faces and separators are disjoint within a layer
        return intersection_size(start, to.faces) + intersection_size(start, to.separators);
    }
    return intersection_size(start, to.of(kind));
}

std::vector<char> presence(const LayerSeries& s, MotifKind kind, MotifKey key, TriangleClassing classing) {
    std::vector<char> p(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) p[i] = present_key(kind, key, s.at(i), classing) ? 1 : 0;
    return p;
}

void check_plateau_args(const LayerSeries& s, std::size_t tau_plat, std::size_t max_shift) {
    if (tau_plat >= max_shift) {
        throw ParameterError(kModule, "plateau start " + std::to_string(tau_plat) + " must be below max shift " +
                                          std::to_string(max_shift));
    }
    if (max_shift > s.max_shift()) {
        throw ParameterError(kModule, "max shift " + std::to_string(max_shift) + " exceeds series max shift " +
                                          std::to_string(s.max_shift()));
    }
}

// Integer numerator of the plateau average.
std::size_t plateau_count(const std::vector<char>& p, std::size_t n_starts, std::size_t tau_plat,
                          std::size_t max_shift) {
    std::vector<std::size_t> prefix(p.size() + 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i) prefix[i + 1] = prefix[i] + static_cast<std::size_t>(p[i]);
    std::size_t count = 0;
    for (std::size_t t = 0; t < n_starts; ++t) {
        if (!p[t]) continue;
        count += prefix[t + max_shift] - prefix[t + tau_plat];
    }
    return count;
}

double plateau_value(std::size_t count, std::size_t n_starts, std::size_t tau_plat, std::size_t max_shift) {
    return static_cast<double>(count) /
           (static_cast<double>(n_starts) * static_cast<double>(max_shift - tau_plat));
}

bool motif_less(const Motif& a, const Motif& b) { return a.vertices < b.vertices; }

}  // namespace

bool motif_present(const Motif& motif, const MotifCatalog& catalog, TriangleClassing classing) {
    return present_key(motif.kind, motif.key(), catalog, classing);
}

bool soft_persistent(const Motif& motif, const MotifCatalog& a, const MotifCatalog& b, TriangleClassing classing) {
    return motif_present(motif, a, classing) && motif_present(motif, b, classing);
}

PersistenceCurve persistence_curve(const LayerSeries& s, MotifKind kind, TriangleClassing classing) {
    for (std::size_t t = 0; t < s.n_starts(); ++t) {
        if (s.at(t).of(kind).empty()) {
            throw InsufficientDataError(kModule, "starting layer " + std::to_string(t) + " has no " +
                                                     std::string(to_string(kind)) + " motifs");
        }
    }
    PersistenceCurve curve;
    curve.kind = kind;
    curve.taus.resize(s.max_shift() + 1);
    curve.values.resize(s.max_shift() + 1);
    std::iota(curve.taus.begin(), curve.taus.end(), std::size_t{0});
    parallel_for(curve.taus.size(), s.config().threads, [&](std::size_t tau) {
        double acc = 0.0;
        for (std::size_t t = 0; t < s.n_starts(); ++t) {
            const auto& from = s.at(t);
            const auto hits = persisting_count(kind, from, s.at(t + tau), classing);
            acc += static_cast<double>(hits) / static_cast<double>(from.of(kind).size());
        }
        curve.values[tau] = acc / static_cast<double>(s.n_starts());
    });
    return curve;
}

double plateau_persistence(const LayerSeries& s, const Motif& motif, std::size_t tau_plat, std::size_t max_shift,
                           TriangleClassing classing) {
    check_plateau_args(s, tau_plat, max_shift);
    const auto p = presence(s, motif.kind, motif.key(), classing);
    return plateau_value(plateau_count(p, s.n_starts(), tau_plat, max_shift), s.n_starts(), tau_plat, max_shift);
}

double motif_persistence_at(const LayerSeries& s, const Motif& motif, std::size_t tau, TriangleClassing classing) {
    if (tau > s.max_shift()) {
        throw ParameterError(kModule, "shift " + std::to_string(tau) + " beyond series max shift");
    }
    std::size_t count = 0;
    for (std::size_t t = 0; t < s.n_starts(); ++t) {
        if (soft_persistent(motif, s.at(t), s.at(t + tau), classing)) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(s.n_starts());
}

double edge_independence_product(const Motif& triangle, const LayerSeries& s, std::size_t tau) {
    if (triangle.vertices.size() != 3) {
        throw ParameterError(kModule, "edge independence product needs a triangle motif");
    }
    const auto& v = triangle.vertices;
    double product = 1.0;
    for (const auto& [a, b] : {std::pair{v[0], v[1]}, std::pair{v[0], v[2]}, std::pair{v[1], v[2]}}) {
        product *= motif_persistence_at(s, Motif{MotifKind::Edge, {a, b}}, tau);
    }
    return product;
}

std::vector<Motif> motif_universe(const LayerSeries& s, MotifKind kind) {
    std::vector<MotifKey> keys;
    for (std::size_t t = 0; t < s.n_starts(); ++t) {
        const auto& set = s.at(t).of(kind);
        keys.insert(keys.end(), set.begin(), set.end());
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<Motif> out;
    out.reserve(keys.size());
    for (MotifKey k : keys) out.push_back({kind, key_vertices(k)});
    return out;
}

std::vector<RankedMotif> score_universe(const LayerSeries& s, MotifKind kind, std::size_t tau_plat,
                                        TriangleClassing classing) {
    check_plateau_args(s, tau_plat, s.max_shift());
    auto universe = motif_universe(s, kind);
    std::vector<RankedMotif> scored(universe.size());
    parallel_for(universe.size(), s.config().threads, [&](std::size_t i) {
        const auto p = presence(s, kind, universe[i].key(), classing);
        scored[i] = {std::move(universe[i]),
                     plateau_value(plateau_count(p, s.n_starts(), tau_plat, s.max_shift()), s.n_starts(), tau_plat,
                                   s.max_shift())};
    });
    return scored;
}

std::vector<RankedMotif> rank_motifs(const LayerSeries& s, MotifKind kind, std::size_t tau_plat, std::size_t k,
                                     TriangleClassing classing) {
    if (k == 0) throw ParameterError(kModule, "k must be at least 1");
    return top_ranked(score_universe(s, kind, tau_plat, classing), k);
}

std::vector<RankedMotif> top_ranked(std::vector<RankedMotif> scored, std::size_t k) {
    if (k == 0) throw ParameterError(kModule, "k must be at least 1");
    std::sort(scored.begin(), scored.end(), [](const RankedMotif& a, const RankedMotif& b) {
        if (a.plateau_persistence != b.plateau_persistence) return a.plateau_persistence > b.plateau_persistence;
        return motif_less(a.motif, b.motif);
    });
    if (scored.size() > k) scored.resize(k);
    return scored;
}

NodePersistence node_persistence(std::size_t n_vertices, const std::vector<RankedMotif>& cliques) {
    NodePersistence np;
    np.scores.assign(n_vertices, 0.0);
    for (const auto& c : cliques) {
        for (Vertex v : c.motif.vertices) {
            np.scores.at(static_cast<std::size_t>(v)) += c.plateau_persistence;
        }
    }
    return np;
}

NodePersistence node_persistence(const LayerSeries& s, std::size_t tau_plat, TriangleClassing classing) {
    return node_persistence(s.n_vertices(), score_universe(s, MotifKind::Tetrahedron, tau_plat, classing));
}

std::vector<Triplet> top_correlated_triplets(const CorrelationMatrix& m, std::size_t k) {
    const auto n = static_cast<Vertex>(m.size());
    std::vector<Triplet> all;
    all.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n) / 6 + 1);
    const auto& c = m.values;
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) {
            for (Vertex d = b + 1; d < n; ++d) {
                all.push_back({{a, b, d}, (c(a, b) + c(a, d) + c(b, d)) / 3.0});
            }
        }
    }
    const auto take = std::min(k, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(),
                      [](const Triplet& x, const Triplet& y) {
                          if (x.mean_correlation != y.mean_correlation) return x.mean_correlation > y.mean_correlation;
                          return x.vertices < y.vertices;
                      });
    all.resize(take);
    return all;
}

std::size_t overlap_with_top_correlated(const std::vector<RankedMotif>& top_triangles, const CorrelationMatrix& m,
                                        std::size_t k) {
    const auto triplets = top_correlated_triplets(m, k);
    std::size_t overlap = 0;
    const std::size_t limit = std::min(k, top_triangles.size());
    for (std::size_t i = 0; i < limit; ++i) {
        const auto& v = top_triangles[i].motif.vertices;
        for (const auto& t : triplets) {
            if (std::equal(v.begin(), v.end(), t.vertices.begin(), t.vertices.end())) {
                ++overlap;
                break;
            }
        }
    }
    return overlap;
}

std::vector<OverlapRow> overlap_report(const LayerSeries& s, const std::vector<RankedMotif>& top_triangles,
                                       std::size_t k) {
    std::vector<OverlapRow> rows(s.n_starts());
    parallel_for(s.n_starts(), s.config().threads, [&](std::size_t t) {
        rows[t] = {t, s.end_index(t), overlap_with_top_correlated(top_triangles, s.correlation_at(t), k)};
    });
    return rows;
}

TriangleCorrelationSummary triangle_correlation_relation(const LayerSeries& s,
                                                         const std::vector<RankedMotif>& triangles) {
    TriangleCorrelationSummary out;
    out.rows.resize(triangles.size());
    for (std::size_t i = 0; i < triangles.size(); ++i) {
        out.rows[i] = {triangles[i].motif, triangles[i].plateau_persistence, 0.0, 0.0};
    }
    for (std::size_t t = 0; t < s.n_starts(); ++t) {
        const auto m = s.correlation_at(t);
        for (auto& row : out.rows) {
            const auto& v = row.motif.vertices;
            const double ab = m.values(v[0], v[1]);
            const double ac = m.values(v[0], v[2]);
            const double bc = m.values(v[1], v[2]);
            row.mean_edge_sum += ab + ac + bc;
            row.mean_edge_product += ab * ac * bc;
        }
    }
    std::vector<double> pers, sums, prods;
    for (auto& row : out.rows) {
        row.mean_edge_sum /= static_cast<double>(s.n_starts());
        row.mean_edge_product /= static_cast<double>(s.n_starts());
        pers.push_back(row.plateau_persistence);
        sums.push_back(row.mean_edge_sum);
        prods.push_back(row.mean_edge_product);
    }
    if (out.rows.size() >= 2) {
        out.pearson_sum = pearson(pers, sums);
        out.pearson_product = pearson(pers, prods);
    }
    return out;
}

}  // namespace persistnet
