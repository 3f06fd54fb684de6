#include "persistnet/graph_checks.hpp"

#include <algorithm>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace persistnet {

namespace {

std::vector<std::vector<Vertex>> adjacency(std::size_t n, std::span<const Edge> edges) {
    std::vector<std::vector<Vertex>> adj(n);
    for (const auto& [u, v] : edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nb : adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return adj;
}

}  // namespace

bool is_planar(std::size_t n, std::span<const Edge> edges) {
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                        boost::property<boost::vertex_index_t, int>>;
    Graph graph(n);
    for (const auto& [u, v] : edges) boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), graph);
    return boost::boyer_myrvold_planarity_test(graph);
}

bool is_chordal(std::size_t n, std::span<const Edge> edges) {
    const auto adj = adjacency(n, edges);

    // MCS: visit order is the reverse of a perfect elimination ordering
    // whenever the graph is chordal.
    std::vector<int> weight(n, 0);
    std::vector<char> visited(n, 0);
    std::vector<Vertex> order;
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        Vertex pick = -1;
        for (std::size_t v = 0; v < n; ++v) {
            if (!visited[v] && (pick < 0 || weight[v] > weight[static_cast<std::size_t>(pick)])) {
                pick = static_cast<Vertex>(v);
            }
        }
        visited[static_cast<std::size_t>(pick)] = 1;
        order.push_back(pick);
        for (Vertex u : adj[static_cast<std::size_t>(pick)]) {
            if (!visited[static_cast<std::size_t>(u)]) ++weight[static_cast<std::size_t>(u)];
        }
    }

    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < n; ++i) position[static_cast<std::size_t>(order[i])] = i;

    // For each v, its earlier-visited neighbours must form a clique. It is
    // enough to check that they are all adjacent to the latest of them.
    for (std::size_t i = 0; i < n; ++i) {
        const Vertex v = order[i];
        std::vector<Vertex> earlier;
        for (Vertex u : adj[static_cast<std::size_t>(v)]) {
            if (position[static_cast<std::size_t>(u)] < i) earlier.push_back(u);
        }
        if (earlier.size() < 2) continue;
        const Vertex parent = *std::max_element(earlier.begin(), earlier.end(), [&](Vertex a, Vertex b) {
            return position[static_cast<std::size_t>(a)] < position[static_cast<std::size_t>(b)];
        });
        const auto& pn = adj[static_cast<std::size_t>(parent)];
        for (Vertex u : earlier) {
            if (u != parent && !std::binary_search(pn.begin(), pn.end(), u)) return false;
        }
    }
    return true;
}

StructureReport check_planarity_chordality(std::size_t n, std::span<const Edge> edges) {
    StructureReport r;
    r.edge_bound = n < 3 || edges.size() <= 3 * n - 6;
    r.planar = r.edge_bound && is_planar(n, edges);
    r.chordal = is_chordal(n, edges);
    return r;
}

StructureReport check_planarity_chordality(const TmfgGraph& g) {
    return check_planarity_chordality(g.n, g.edges);
}

}  // namespace persistnet
