#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "persistnet/correlation.hpp"

namespace persistnet {

using Vertex = int;
using Edge = std::array<Vertex, 2>;
using Triangle = std::array<Vertex, 3>;
using Tetrahedron = std::array<Vertex, 4>;

// How a correlation entry becomes an insertion gain weight.
enum class GainTransform { Raw, Squared, Absolute };

struct TmfgOptions {
    GainTransform gain = GainTransform::Raw;
    // Exact seed search over all 4-subsets while C(N, 4) stays under this.
    double exact_seed_limit = 1e7;
};

struct Insertion {
    Vertex vertex;
    Triangle face;
    double gain;
};

/// Triangulated Maximally Filtered Graph. All vertex tuples are sorted
/// ascending; lists are sorted lexicographically.
///   |edges| = 3n - 6, |tetrahedra| = n - 3, |separators| = n - 4,
///   |faces| = 2n - 4.
struct TmfgGraph {
    std::size_t n = 0;
    std::vector<Edge> edges;
    std::vector<Tetrahedron> tetrahedra;
    std::vector<Triangle> separators;
    std::vector<Triangle> faces;

    // Construction trace: seed clique, then insertions in order.
    Tetrahedron seed{};
    std::vector<Insertion> insertions;
};

Eigen::MatrixXd gain_weights(const Eigen::MatrixXd& correlation, GainTransform transform);

TmfgGraph build_tmfg(const Eigen::MatrixXd& correlation, const TmfgOptions& options = {});
TmfgGraph build_tmfg(const CorrelationMatrix& correlation, const TmfgOptions& options = {});

// JSON object with `edges`, `tetrahedra`, `separators`, `faces` as lists of
// sorted asset-id tuples.
void write_graph_json(std::ostream& out, const TmfgGraph& g, const std::vector<std::string>& assets);

}  // namespace persistnet
