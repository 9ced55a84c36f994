#include "coarse/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

#include "coarse/errors.hpp"

namespace coarse {

SimpleGraph SimpleGraph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
    if (n <= 0) throw DomainError("SimpleGraph: vertex count must be positive");
    SimpleGraph g;
    g.n_ = n;
    g.adj_.resize(n);
    std::set<std::pair<int, int>> seen;
    for (std::pair<int, int> e : edges) {
        if (e.first > e.second) std::swap(e.first, e.second);
        if (e.first < 0 || e.second >= n)
            throw DomainError("SimpleGraph: edge (" + std::to_string(e.first) + "," +
                              std::to_string(e.second) + ") out of range for n=" +
                              std::to_string(n));
        if (e.first == e.second)
            throw DomainError("SimpleGraph: loop at vertex " + std::to_string(e.first));
        if (!seen.insert(e).second)
            throw DomainError("SimpleGraph: duplicate edge (" + std::to_string(e.first) +
                              "," + std::to_string(e.second) + ")");
    }
    g.edges_.assign(seen.begin(), seen.end());
    for (const auto& [u, v] : g.edges_) {
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (std::vector<int>& a : g.adj_) std::sort(a.begin(), a.end());
    return g;
}

bool SimpleGraph::is_connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(n_, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int w : adj_[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push(w);
            }
    }
    return reached == n_;
}

RegularGraph RegularGraph::from_graph(SimpleGraph g) {
    RegularGraph r;
    const int n = g.vertex_count();
    if (n == 0) throw DomainError("RegularGraph: empty graph");
    const int k = g.degree(0);
    for (int v = 1; v < n; ++v)
        if (g.degree(v) != k)
            throw DomainError("RegularGraph: vertex 0 has degree " + std::to_string(k) +
                              " but vertex " + std::to_string(v) + " has degree " +
                              std::to_string(g.degree(v)));
    r.g_ = std::move(g);
    r.k_ = k;
    return r;
}

RegularGraph complete_graph(int n) {
    if (n < 2) throw DomainError("complete_graph: need n >= 2");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return RegularGraph::from_graph(SimpleGraph::from_edges(n, std::move(edges)));
}

RegularGraph cycle_graph(int n) {
    if (n < 3) throw DomainError("cycle_graph: need n >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return RegularGraph::from_graph(SimpleGraph::from_edges(n, std::move(edges)));
}

SimpleGraph path_graph(int n) {
    if (n < 2) throw DomainError("path_graph: need n >= 2");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return SimpleGraph::from_edges(n, std::move(edges));
}

RegularGraph petersen_graph() {
    // Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);
        edges.emplace_back(i, i + 5);
    }
    return RegularGraph::from_graph(SimpleGraph::from_edges(10, std::move(edges)));
}

FiniteMetricSpace graph_metric(const SimpleGraph& g) {
    const int n = g.vertex_count();
    std::vector<double> flat(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<int> dist(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int w : g.neighbors(v))
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    q.push(w);
                }
        }
        for (int t = 0; t < n; ++t) {
            if (dist[t] < 0)
                throw DomainError("graph_metric: graph is disconnected (vertex " +
                                  std::to_string(t) + " unreachable from vertex " +
                                  std::to_string(s) + ")");
            flat[static_cast<std::size_t>(s) * n + t] = static_cast<double>(dist[t]);
        }
    }
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = "v" + std::to_string(i);
    return FiniteMetricSpace::trusted(std::move(labels), std::move(flat), n);
}

FiniteMetricSpace graph_metric(const RegularGraph& g) { return graph_metric(g.graph()); }

} // namespace coarse
