#include "coarse/expander.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "coarse/errors.hpp"
#include "coarse/linalg.hpp"
#include "coarse/rng.hpp"

namespace coarse {

namespace {

std::vector<double> adjacency_matrix(const RegularGraph& g) {
    const int n = g.vertex_count();
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    for (const auto& [u, v] : g.edges()) {
        a[static_cast<std::size_t>(u) * n + v] = 1.0;
        a[static_cast<std::size_t>(v) * n + u] = 1.0;
    }
    return a;
}

// Edge boundary of the subset encoded by `mask`.
long long boundary_of_mask(const RegularGraph& g, std::uint32_t mask) {
    long long b = 0;
    for (const auto& [u, v] : g.edges())
        if (((mask >> u) & 1u) != ((mask >> v) & 1u)) ++b;
    return b;
}

ExpansionCertificate finish_certificate(const RegularGraph& g, long long num,
                                        long long den, std::vector<int> witness,
                                        ExpansionCertificate::Method method) {
    const long long d = std::gcd(num, den);
    ExpansionCertificate cert;
    cert.h_num = d > 0 ? num / d : num;
    cert.h_den = d > 0 ? den / d : den;
    std::sort(witness.begin(), witness.end());
    cert.witness = std::move(witness);
    const SpectralGapResult s = spectral_gap(g);
    cert.lambda2 = s.lambda2;
    cert.gap = s.gap;
    cert.method = method;

    // Two-sided Cheeger inequality; a failure here means a solver bug, not a
    // caller error. (For the spectral method h is the sweep-cut value, which
    // also satisfies both sides: it dominates h(G) >= gap/2 and the sweep cut
    // realizes the discrete Cheeger upper bound.)
    const double h = cert.h_value();
    const double k = static_cast<double>(g.degree());
    if (h < cert.gap / 2.0 - 1e-9 ||
        h > std::sqrt(2.0 * k * cert.gap) + 1e-9)
        throw std::logic_error("expansion certificate violates the Cheeger inequality");
    return cert;
}

} // namespace

RegularGraph random_regular_graph(int n, int k, std::uint64_t seed) {
    if (k < 3) throw DomainError("random_regular_graph: need k >= 3");
    if (k >= n) throw DomainError("random_regular_graph: need k < n");
    if ((static_cast<long long>(n) * k) % 2 != 0)
        throw DomainError("random_regular_graph: n*k = " + std::to_string(n) + "*" +
                          std::to_string(k) + " is odd");

    SplitMix64 rng(seed);
    const int half_edges = n * k;
    std::vector<int> stub(half_edges);
    for (int i = 0; i < half_edges; ++i) stub[i] = i / k; // owner vertex

    const int max_attempts = 1000000;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        // Fisher-Yates over the stubs; consecutive pairs form the matching.
        std::vector<int> perm = stub;
        for (int i = half_edges - 1; i > 0; --i) {
            const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
            std::swap(perm[i], perm[j]);
        }
        std::vector<std::pair<int, int>> edges;
        edges.reserve(half_edges / 2);
        bool ok = true;
        std::vector<char> used(static_cast<std::size_t>(n) * n, 0);
        for (int i = 0; i < half_edges && ok; i += 2) {
            int u = perm[i], v = perm[i + 1];
            if (u == v) {
                ok = false; // self-loop
                break;
            }
            if (u > v) std::swap(u, v);
            char& cell = used[static_cast<std::size_t>(u) * n + v];
            if (cell) {
                ok = false; // parallel edge
                break;
            }
            cell = 1;
            edges.emplace_back(u, v);
        }
        if (!ok) continue;
        return RegularGraph::from_graph(SimpleGraph::from_edges(n, std::move(edges)));
    }
    throw DomainError("random_regular_graph: 1000000 matchings rejected for n=" +
                      std::to_string(n) + ", k=" + std::to_string(k));
}

SpectralGapResult spectral_gap(const RegularGraph& g) {
    if (!g.graph().is_connected())
        throw DomainError("spectral_gap: graph is disconnected");
    const int n = g.vertex_count();
    std::vector<double> vals = jacobi_eigenvalues(adjacency_matrix(g), n, 1e-12);
    // vals is sorted descending; vals[0] ~ k for a connected regular graph.
    const double lambda2 = vals.at(1);
    return {lambda2, static_cast<double>(g.degree()) - lambda2};
}

ExpansionCertificate cheeger_exact(const RegularGraph& g) {
    const int n = g.vertex_count();
    if (n > 24)
        throw DomainError("cheeger_exact: n = " + std::to_string(n) +
                          " exceeds the exhaustive-scan limit 24; use the spectral "
                          "certificate instead");
    if (n < 2) throw DomainError("cheeger_exact: need at least two vertices");

    // Adjacency bitmasks for O(1) incremental boundary updates.
    std::vector<std::uint32_t> adj(n, 0);
    for (const auto& [u, v] : g.edges()) {
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
    }

    // Enumerate one representative per bipartition: subsets of {0..n-2}
    // (vertex n-1 stays on the other side), in Gray-code order so each step
    // toggles a single vertex. boundary(S) = boundary(complement), so the
    // candidate ratio for a mask of popcount s is boundary / min(s, n-s).
    const std::uint32_t total = (n >= 1) ? (1u << (n - 1)) : 0;
    std::uint32_t subset = 0;
    long long boundary = 0;
    long long best_num = -1, best_den = 1;
    std::uint32_t best_mask = 0;

    for (std::uint32_t i = 1; i < total; ++i) {
        const int v = std::countr_zero(i); // bit flipped between gray(i-1), gray(i)
        const std::uint32_t bit = 1u << v;
        if (subset & bit) {
            subset ^= bit;
            const long long inside = std::popcount(adj[v] & subset);
            boundary -= g.degree() - 2 * inside;
        } else {
            const long long inside = std::popcount(adj[v] & subset);
            boundary += g.degree() - 2 * inside;
            subset ^= bit;
        }
        const int s = std::popcount(subset);
        const long long side = std::min(s, n - s);
        // boundary/side < best_num/best_den  <=>  boundary*best_den < best_num*side
        if (best_num < 0 || boundary * best_den < best_num * side) {
            best_num = boundary;
            best_den = side;
            best_mask = subset;
        }
    }

    // Report the small side of the best bipartition as witness.
    const int s = std::popcount(best_mask);
    std::uint32_t mask = best_mask;
    if (s > n - s) mask = ~best_mask & ((n == 32) ? ~0u : ((1u << n) - 1));
    std::vector<int> witness;
    for (int v = 0; v < n; ++v)
        if ((mask >> v) & 1u) witness.push_back(v);

    return finish_certificate(g, best_num, best_den, std::move(witness),
                              ExpansionCertificate::Method::Exact);
}

ExpansionCertificate certify_expansion(const RegularGraph& g) {
    if (g.vertex_count() <= 24) return cheeger_exact(g);
    if (!g.graph().is_connected())
        throw DomainError("certify_expansion: graph is disconnected");

    const int n = g.vertex_count();
    const EigenSystem es = jacobi_eigensystem(adjacency_matrix(g), n, 1e-12);
    const std::vector<double>& fiedler = es.vectors.at(1);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return fiedler[a] < fiedler[b];
    });

    // Sweep the sorted prefixes; track boundary incrementally.
    std::vector<char> in(n, 0);
    long long boundary = 0;
    long long best_num = -1, best_den = 1;
    int best_t = 0;
    for (int t = 0; t < n - 1; ++t) {
        const int v = order[t];
        long long inside = 0;
        for (int w : g.neighbors(v)) inside += in[w];
        boundary += g.degree() - 2 * inside;
        in[v] = 1;
        const long long side = std::min(t + 1, n - (t + 1));
        if (best_num < 0 || boundary * best_den < best_num * side) {
            best_num = boundary;
            best_den = side;
            best_t = t + 1;
        }
    }

    const bool small_is_prefix = best_t <= n - best_t;
    std::vector<int> witness;
    if (small_is_prefix)
        witness.assign(order.begin(), order.begin() + best_t);
    else
        witness.assign(order.begin() + best_t, order.end());

    return finish_certificate(g, best_num, best_den, std::move(witness),
                              ExpansionCertificate::Method::Spectral);
}

std::vector<CertifiedGraph> expander_family(const std::vector<int>& sizes, int k,
                                            double epsilon, std::uint64_t seed) {
    if (!(epsilon > 0.0)) throw DomainError("expander_family: epsilon must be > 0");
    if (sizes.empty()) throw DomainError("expander_family: no sizes given");
    for (int n : sizes)
        if ((static_cast<long long>(n) * k) % 2 != 0)
            throw DomainError("expander_family: n*k odd for n = " + std::to_string(n));

    std::vector<CertifiedGraph> out;
    out.reserve(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const std::uint64_t member_base = derive_seed(seed, i);
        double best_bound = -1.0;
        bool done = false;
        for (int attempt = 0; attempt < 100 && !done; ++attempt) {
            const std::uint64_t attempt_seed = derive_seed(member_base, attempt);
            RegularGraph g = random_regular_graph(sizes[i], k, attempt_seed);
            if (!g.graph().is_connected()) continue;
            ExpansionCertificate cert = certify_expansion(g);
            const double bound = cert.cheeger_lower_bound();
            best_bound = std::max(best_bound, bound);
            if (bound >= epsilon) {
                out.push_back({std::move(g), std::move(cert), attempt_seed});
                done = true;
            }
        }
        if (!done)
            throw DomainError("expander_family: 100 attempts at n = " +
                              std::to_string(sizes[i]) + ", k = " + std::to_string(k) +
                              " never certified h >= " + std::to_string(epsilon) +
                              " (best achieved bound: " + std::to_string(best_bound) +
                              ")");
    }
    return out;
}

} // namespace coarse
