#include "portopt/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "portopt/errors.hpp"

namespace portopt {

bool MarketGraph::has_edge(int u, int v) const {
    if (u == v) return false;
    for (const auto& [w, _] : adjacency[u]) {
        if (w == v) return true;
    }
    return false;
}

double MarketGraph::density() const {
    if (n < 2) return 0.0;
    return 2.0 * num_edges() / (static_cast<double>(n) * (n - 1));
}

MarketGraph build_market_graph(const MarketModel& m, double alpha) {
    if (alpha < 0.0 || alpha > 1.0) {
        throw ConfigError("correlation threshold alpha must lie in [0, 1]");
    }
    MarketGraph g;
    g.n = m.num_assets();
    g.alpha = alpha;
    g.adjacency.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        for (int j = i + 1; j < g.n; ++j) {
            const double w = std::abs(m.corr(i, j));
            if (w >= alpha) {
                g.edges.emplace_back(i, j);
                g.weights.push_back(w);
                g.adjacency[i].emplace_back(j, w);
                g.adjacency[j].emplace_back(i, w);
            }
        }
    }
    return g;
}

QuboProblem mis_qubo(const MarketGraph& g) {
    if (g.n < 1) throw ConfigError("MIS model needs at least one vertex");
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(g.n, g.n);
    for (int i = 0; i < g.n; ++i) q(i, i) = -1.0;
    for (const auto& [i, j] : g.edges) {
        q(i, j) += 1.0;
        q(j, i) += 1.0;  // symmetric halves sum to the 2*x_i*x_j penalty
    }
    return make_qubo(std::move(q), 0.0);
}

IndependentSet validate_independent_set(const MarketGraph& g, const BinaryConfig& selection) {
    if (static_cast<int>(selection.size()) != g.n) {
        throw DimensionError("selection length does not match vertex count");
    }
    for (const auto& [i, j] : g.edges) {
        if (selection[i] && selection[j]) {
            throw IndependenceError("vertices " + std::to_string(i) + " and " +
                                    std::to_string(j) + " are adjacent");
        }
    }
    IndependentSet s;
    for (int v = 0; v < g.n; ++v) {
        if (selection[v]) s.members.push_back(v);
    }
    s.maximal = true;
    for (int v = 0; v < g.n && s.maximal; ++v) {
        if (selection[v]) continue;
        bool blocked = false;
        for (const auto& [u, _] : g.adjacency[v]) {
            if (selection[u]) { blocked = true; break; }
        }
        if (!blocked) s.maximal = false;  // v could be added
    }
    if (g.n == 0) s.maximal = true;
    return s;
}

void write_graph(const MarketGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IngestError("cannot write graph file: " + path);
    char buf[64];
    std::snprintf(buf, sizeof buf, "# %d %.6g\n", g.n, g.alpha);
    out << buf;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        std::snprintf(buf, sizeof buf, "%d %d %.12g\n", g.edges[e].first, g.edges[e].second,
                      g.weights[e]);
        out << buf;
    }
}

}  // namespace portopt
