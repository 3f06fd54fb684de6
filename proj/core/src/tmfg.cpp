#include "persistnet/tmfg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "json.hpp"

#include "persistnet/errors.hpp"

namespace persistnet {

namespace {

constexpr const char* kModule = "filtergraph";

Triangle sorted(Vertex a, Vertex b, Vertex c) {
    Triangle t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

double binomial4(std::size_t n) {
    const double x = static_cast<double>(n);
    return x * (x - 1) * (x - 2) * (x - 3) / 24.0;
}

// Six-edge clique weight, summed in a fixed order so that partial sums can be
// reused during enumeration: (ab + ac + bc) + ad + bd + cd.
Tetrahedron exact_seed(const Eigen::MatrixXd& w) {
    const auto n = static_cast<int>(w.rows());
    double best = -std::numeric_limits<double>::infinity();
    Tetrahedron best_q{0, 1, 2, 3};
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const double ab = w(a, b);
            for (int c = b + 1; c < n; ++c) {
                const double abc = ab + w(a, c) + w(b, c);
                for (int d = c + 1; d < n; ++d) {
                    const double s = abc + w(a, d) + w(b, d) + w(c, d);
                    if (s > best) {
                        best = s;
                        best_q = {a, b, c, d};
                    }
                }
            }
        }
    }
    return best_q;
}

Tetrahedron greedy_seed(const Eigen::MatrixXd& w) {
    const auto n = static_cast<int>(w.rows());
    int ea = 0, eb = 1;
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (w(a, b) > best) {
                best = w(a, b);
                ea = a;
                eb = b;
            }
        }
    }
    std::vector<int> members{ea, eb};
    while (members.size() < 4) {
        int pick = -1;
        double pick_gain = -std::numeric_limits<double>::infinity();
        for (int v = 0; v < n; ++v) {
            if (std::find(members.begin(), members.end(), v) != members.end()) continue;
            double g = 0.0;
            for (int m : members) g += w(v, m);
            if (g > pick_gain) {
                pick_gain = g;
                pick = v;
            }
        }
        members.push_back(pick);
    }
    std::sort(members.begin(), members.end());
    return {members[0], members[1], members[2], members[3]};
}

struct FaceState {
    Triangle face;
    Vertex best_vertex = -1;
    double best_gain = -std::numeric_limits<double>::infinity();
};

double face_gain(const Eigen::MatrixXd& w, Vertex v, const Triangle& f) {
    return w(v, f[0]) + w(v, f[1]) + w(v, f[2]);
}

void refresh_best(FaceState& fs, const Eigen::MatrixXd& w, const std::vector<char>& inserted) {
    fs.best_vertex = -1;
    fs.best_gain = -std::numeric_limits<double>::infinity();
    const auto n = static_cast<Vertex>(w.rows());
    for (Vertex v = 0; v < n; ++v) {
        if (inserted[static_cast<std::size_t>(v)]) continue;
        const double g = face_gain(w, v, fs.face);
        if (g > fs.best_gain) {
            fs.best_gain = g;
            fs.best_vertex = v;
        }
    }
}

}  // namespace

Eigen::MatrixXd gain_weights(const Eigen::MatrixXd& correlation, GainTransform transform) {
    switch (transform) {
        case GainTransform::Raw:
            return correlation;
        case GainTransform::Squared:
            return correlation.array().square().matrix();
        case GainTransform::Absolute:
            return correlation.array().abs().matrix();
    }
    return correlation;
}

TmfgGraph build_tmfg(const CorrelationMatrix& correlation, const TmfgOptions& options) {
    return build_tmfg(correlation.values, options);
}

TmfgGraph build_tmfg(const Eigen::MatrixXd& correlation, const TmfgOptions& options) {
    if (correlation.rows() != correlation.cols()) {
        throw DimensionError(kModule, "correlation matrix is not square");
    }
    const auto n = static_cast<std::size_t>(correlation.rows());
    if (n < 4) {
        throw SizeError(kModule, "TMFG needs at least 4 vertices, got " + std::to_string(n));
    }
    if (!correlation.allFinite()) {
        throw ValidationError(kModule, "correlation matrix has non-finite entries");
    }
    const Eigen::MatrixXd w = gain_weights(correlation, options.gain);

    TmfgGraph g;
    g.n = n;
    g.seed = binomial4(n) <= options.exact_seed_limit ? exact_seed(w) : greedy_seed(w);

    std::vector<char> inserted(n, 0);
    for (Vertex v : g.seed) inserted[static_cast<std::size_t>(v)] = 1;

    const auto [a, b, c, d] = g.seed;
    g.edges = {{a, b}, {a, c}, {a, d}, {b, c}, {b, d}, {c, d}};
    g.tetrahedra.push_back(g.seed);

    std::vector<FaceState> faces;
    for (const Triangle& f : {Triangle{a, b, c}, Triangle{a, b, d}, Triangle{a, c, d}, Triangle{b, c, d}}) {
        faces.push_back({f});
    }
    if (n > 4) {
        for (auto& fs : faces) refresh_best(fs, w, inserted);
    }

    for (std::size_t step = 4; step < n; ++step) {
        // Max gain; ties broken by lowest vertex, then lowest face key.
        std::size_t pick = 0;
        for (std::size_t i = 1; i < faces.size(); ++i) {
            const auto& cand = faces[i];
            const auto& cur = faces[pick];
            if (cand.best_gain > cur.best_gain ||
                (cand.best_gain == cur.best_gain &&
                 (cand.best_vertex < cur.best_vertex ||
                  (cand.best_vertex == cur.best_vertex && cand.face < cur.face)))) {
                pick = i;
            }
        }
        const Vertex v = faces[pick].best_vertex;
        const Triangle f = faces[pick].face;
        g.insertions.push_back({v, f, faces[pick].best_gain});
        inserted[static_cast<std::size_t>(v)] = 1;

        g.separators.push_back(f);
        Tetrahedron tet{v, f[0], f[1], f[2]};
        std::sort(tet.begin(), tet.end());
        g.tetrahedra.push_back(tet);
        for (Vertex u : f) {
            g.edges.push_back({std::min(u, v), std::max(u, v)});
        }

        faces.erase(faces.begin() + static_cast<std::ptrdiff_t>(pick));
        faces.push_back({sorted(v, f[0], f[1])});
        faces.push_back({sorted(v, f[0], f[2])});
        faces.push_back({sorted(v, f[1], f[2])});

        if (step + 1 < n) {
            for (auto& fs : faces) {
                if (fs.best_vertex == v || fs.best_vertex < 0) refresh_best(fs, w, inserted);
            }
        }
    }

    for (const auto& fs : faces) g.faces.push_back(fs.face);
    std::sort(g.edges.begin(), g.edges.end());
    std::sort(g.tetrahedra.begin(), g.tetrahedra.end());
    std::sort(g.separators.begin(), g.separators.end());
    std::sort(g.faces.begin(), g.faces.end());
    return g;
}

void write_graph_json(std::ostream& out, const TmfgGraph& g, const std::vector<std::string>& assets) {
    auto names = [&](const auto& tuples) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& t : tuples) {
            nlohmann::json row = nlohmann::json::array();
            for (Vertex v : t) row.push_back(assets.at(static_cast<std::size_t>(v)));
            arr.push_back(std::move(row));
        }
        return arr;
    };
    nlohmann::json doc;
    doc["edges"] = names(g.edges);
    doc["tetrahedra"] = names(g.tetrahedra);
    doc["separators"] = names(g.separators);
    doc["faces"] = names(g.faces);
    out << doc.dump(2) << '\n';
}

}  // namespace persistnet
