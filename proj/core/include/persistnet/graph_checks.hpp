#pragma once

#include <cstddef>
#include <span>

#include "persistnet/tmfg.hpp"

namespace persistnet {

struct StructureReport {
    bool edge_bound = false;  // |E| <= 3n - 6 (n >= 3)
    bool planar = false;      // Boyer-Myrvold test
    bool chordal = false;     // perfect elimination ordering exists

    bool ok() const { return edge_bound && planar && chordal; }
};

bool is_planar(std::size_t n, std::span<const Edge> edges);

// Maximum cardinality search followed by a perfect-elimination check.
bool is_chordal(std::size_t n, std::span<const Edge> edges);

StructureReport check_planarity_chordality(std::size_t n, std::span<const Edge> edges);
StructureReport check_planarity_chordality(const TmfgGraph& g);

}  // namespace persistnet
