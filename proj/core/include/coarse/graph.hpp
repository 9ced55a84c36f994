#pragma once

#include <utility>
#include <vector>

#include "coarse/metric_space.hpp"

namespace coarse {

// Undirected simple graph on vertices {0, ..., n-1}. Edges are stored once
// as (u, v) with u < v, sorted lexicographically; adjacency lists are sorted.
class SimpleGraph {
public:
    // Validates: indices in range, no loops, no parallel edges. Accepts edges
    // in either endpoint order and any sequence order.
    static SimpleGraph from_edges(int n, std::vector<std::pair<int, int>> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool is_connected() const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

// A simple graph that is k-regular. Wraps SimpleGraph; construction checks
// the degrees.
class RegularGraph {
public:
    static RegularGraph from_graph(SimpleGraph g);

    int vertex_count() const { return g_.vertex_count(); }
    int degree() const { return k_; }
    const SimpleGraph& graph() const { return g_; }
    const std::vector<int>& neighbors(int v) const { return g_.neighbors(v); }
    const std::vector<std::pair<int, int>>& edges() const { return g_.edges(); }

private:
    SimpleGraph g_;
    int k_ = 0;
};

RegularGraph complete_graph(int n); // K_n, n >= 2
RegularGraph cycle_graph(int n);    // C_n, n >= 3
SimpleGraph path_graph(int n);      // P_n, n >= 2
RegularGraph petersen_graph();

// Shortest-path metric via BFS from every vertex; distances are exact small
// integers widened to double. Throws DomainError naming an unreachable pair
// when the graph is disconnected (the "metric" would be infinite there).
// Labels are "v0", "v1", ...
FiniteMetricSpace graph_metric(const SimpleGraph& g);
FiniteMetricSpace graph_metric(const RegularGraph& g);

} // namespace coarse
