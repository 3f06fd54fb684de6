#include "persistnet/motifs.hpp"

#include <algorithm>

#include "persistnet/errors.hpp"

namespace persistnet {

namespace {

constexpr const char* kModule = "filtergraph";

template <std::size_t K>
std::vector<MotifKey> keys_of(const std::vector<std::array<Vertex, K>>& tuples) {
    std::vector<MotifKey> keys;
    keys.reserve(tuples.size());
    for (const auto& t : tuples) keys.push_back(motif_key(t));
    std::sort(keys.begin(), keys.end());
    return keys;
}

}  // namespace

std::string_view to_string(MotifKind kind) {
    switch (kind) {
        case MotifKind::Edge: return "edge";
        case MotifKind::Triangle: return "triangle";
        case MotifKind::Separator: return "separator";
        case MotifKind::Tetrahedron: return "tetrahedron";
    }
    return "unknown";
}

MotifKind parse_motif_kind(std::string_view name) {
    if (name == "edge") return MotifKind::Edge;
    if (name == "triangle") return MotifKind::Triangle;
    if (name == "separator") return MotifKind::Separator;
    if (name == "tetrahedron") return MotifKind::Tetrahedron;
    throw ParameterError(kModule, "unknown motif kind '" + std::string(name) + "'");
}

std::size_t motif_size(MotifKind kind) {
    switch (kind) {
        case MotifKind::Edge: return 2;
        case MotifKind::Triangle:
        case MotifKind::Separator: return 3;
        case MotifKind::Tetrahedron: return 4;
    }
    return 0;
}

MotifKey motif_key(std::span<const Vertex> sorted_vertices) {
    MotifKey key = 0;
    for (Vertex v : sorted_vertices) {
        key = (key << 16) | static_cast<MotifKey>(v + 1);
    }
    return key;
}

std::vector<Vertex> key_vertices(MotifKey key) {
    std::vector<Vertex> out;
    while (key != 0) {
        out.push_back(static_cast<Vertex>(key & 0xFFFF) - 1);
        key >>= 16;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

Motif make_motif(MotifKind kind, std::vector<Vertex> vertices) {
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
        throw ParameterError(kModule, "motif has duplicate vertices");
    }
    if (vertices.size() != motif_size(kind)) {
        throw ParameterError(kModule, std::string(to_string(kind)) + " motif needs " +
                                          std::to_string(motif_size(kind)) + " vertices");
    }
    for (Vertex v : vertices) {
        if (v < 0 || v >= 0xFFFF) throw ParameterError(kModule, "vertex index out of range");
    }
    return {kind, std::move(vertices)};
}

const std::vector<MotifKey>& MotifCatalog::of(MotifKind kind) const {
    switch (kind) {
        case MotifKind::Edge: return edges;
        case MotifKind::Triangle: return faces;
        case MotifKind::Separator: return separators;
        case MotifKind::Tetrahedron: return tetrahedra;
    }
    return edges;
}

bool MotifCatalog::contains(MotifKind kind, MotifKey key) const {
    const auto& set = of(kind);
    return std::binary_search(set.begin(), set.end(), key);
}

MotifCatalog extract_motifs(const TmfgGraph& g) {
    MotifCatalog c;
    c.edges = keys_of(g.edges);
    c.faces = keys_of(g.faces);
    c.separators = keys_of(g.separators);
    c.tetrahedra = keys_of(g.tetrahedra);
    return c;
}

std::vector<Motif> motifs_of(const MotifCatalog& catalog, MotifKind kind) {
    std::vector<Motif> out;
    for (MotifKey k : catalog.of(kind)) out.push_back({kind, key_vertices(k)});
    return out;
}

}  // namespace persistnet
