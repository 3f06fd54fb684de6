#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "persistnet/tmfg.hpp"

namespace persistnet {

enum class MotifKind { Edge, Triangle, Separator, Tetrahedron };

std::string_view to_string(MotifKind kind);
MotifKind parse_motif_kind(std::string_view name);
std::size_t motif_size(MotifKind kind);

// Vertex set packed into 16-bit lanes (vertex + 1, lowest vertex in the most
// significant used lane), so key order equals lexicographic tuple order for
// tuples of equal size.
using MotifKey = std::uint64_t;

MotifKey motif_key(std::span<const Vertex> sorted_vertices);
std::vector<Vertex> key_vertices(MotifKey key);

/// A canonical motif: `vertices` sorted ascending without duplicates.
struct Motif {
    MotifKind kind = MotifKind::Edge;
    std::vector<Vertex> vertices;

    MotifKey key() const { return motif_key(vertices); }
    friend bool operator==(const Motif&, const Motif&) = default;
};

Motif make_motif(MotifKind kind, std::vector<Vertex> vertices);

/// Motif sets of one TMFG layer, each a sorted vector of keys.
struct MotifCatalog {
    std::vector<MotifKey> edges;
    std::vector<MotifKey> faces;
    std::vector<MotifKey> separators;
    std::vector<MotifKey> tetrahedra;

    const std::vector<MotifKey>& of(MotifKind kind) const;
    bool contains(MotifKind kind, MotifKey key) const;
};

MotifCatalog extract_motifs(const TmfgGraph& g);

std::vector<Motif> motifs_of(const MotifCatalog& catalog, MotifKind kind);

}  // namespace persistnet
