#pragma once

#include <string>
#include <utility>
#include <vector>

#include "portopt/market.hpp"
#include "portopt/qubo.hpp"

namespace portopt {

/// Undirected asset graph: an edge joins two assets whose absolute return
/// correlation reaches the threshold alpha; the edge weight is that
/// absolute correlation.
struct MarketGraph {
    int n = 0;
    double alpha = 0.0;
    std::vector<std::pair<int, int>> edges;  // (i, j) with i < j, each once
    std::vector<double> weights;             // parallel to edges, in [alpha, 1]

    /// Neighbor lists with weights, built at construction.
    std::vector<std::vector<std::pair<int, double>>> adjacency;

    bool has_edge(int u, int v) const;
    int num_edges() const { return static_cast<int>(edges.size()); }
    double density() const;
};

struct IndependentSet {
    std::vector<int> members;  // sorted ascending
    bool maximal = false;      // no vertex can be added
};

/// Thresholds the model's correlation matrix: edge (i,j) iff |corr_ij| >= alpha.
MarketGraph build_market_graph(const MarketModel& m, double alpha);

/// Independent-set model over the graph's vertices:
/// energy(x) = -sum_i x_i + 2 * sum_{(i,j) in E} x_i x_j.
QuboProblem mis_qubo(const MarketGraph& g);

/// Checks that no two selected vertices are adjacent; reports whether the
/// set is maximal. Throws naming the first violated edge otherwise.
IndependentSet validate_independent_set(const MarketGraph& g, const BinaryConfig& selection);

/// Edge-list text export, header "# n alpha" then one "i j weight" per line.
void write_graph(const MarketGraph& g, const std::string& path);

}  // namespace portopt
