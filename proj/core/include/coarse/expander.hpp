#pragma once

#include <cstdint>
#include <vector>

#include "coarse/graph.hpp"

namespace coarse {

// Certificate of edge expansion. With method == Exact, h_num/h_den is the
// exact Cheeger constant h(G) = min |boundary(F)| / |F| over 0 < |F| <= n/2
// and `witness` attains it. With method == Spectral, h_num/h_den is the ratio
// of the Fiedler sweep cut stored in `witness` (a genuine upper bound on
// h(G), attained by that cut) and the certified lower bound is gap/2 from
// the easy side of the Cheeger inequality.
struct ExpansionCertificate {
    long long h_num = 0;
    long long h_den = 1;
    std::vector<int> witness; // sorted vertex subset, 0 < |F| <= n/2
    double lambda2 = 0.0;     // second-largest adjacency eigenvalue
    double gap = 0.0;         // k - lambda2
    enum class Method { Exact, Spectral } method = Method::Exact;

    double h_value() const { return static_cast<double>(h_num) / static_cast<double>(h_den); }
    double cheeger_lower_bound() const {
        return method == Method::Exact ? h_value() : gap / 2.0;
    }
};

// Pairing model: k half-edges per vertex, a uniformly random perfect
// matching, and whole-matching rejection on loops or parallel edges.
// Deterministic given the seed. Requires n*k even, 3 <= k < n; throws
// DomainError after 1e6 rejected matchings.
RegularGraph random_regular_graph(int n, int k, std::uint64_t seed);

// Exhaustive scan of all 2^(n-1) - 1 bipartitions (Gray-code order, O(1)
// boundary updates). Requires n <= 24; beyond that throws DomainError
// pointing at the spectral certificate. Also fills lambda2/gap.
ExpansionCertificate cheeger_exact(const RegularGraph& g);

struct SpectralGapResult {
    double lambda2;
    double gap; // k - lambda2
};

// Adjacency spectrum by cyclic Jacobi (off-norm <= 1e-12). Requires a
// connected graph.
SpectralGapResult spectral_gap(const RegularGraph& g);

// Exact certificate for n <= 24, otherwise the spectral certificate with a
// Fiedler sweep cut as witness. Both respect the two-sided Cheeger
// inequality by construction; violation would throw std::logic_error.
ExpansionCertificate certify_expansion(const RegularGraph& g);

struct CertifiedGraph {
    RegularGraph graph;
    ExpansionCertificate certificate;
    std::uint64_t seed; // the derived seed that produced the accepted graph
};

inline constexpr double kDefaultFamilyEpsilon = 0.2; // sensible for k = 3

// One certified expander per requested size, in the order given. Member i
// draws attempt seeds derive_seed(derive_seed(seed, i), attempt) and
// regenerates until the certified bound cheeger_lower_bound() reaches
// epsilon; 100 failed attempts for one size throw DomainError reporting the
// best bound achieved. Requires n*k even for every size and epsilon > 0.
std::vector<CertifiedGraph> expander_family(const std::vector<int>& sizes, int k,
                                            double epsilon, std::uint64_t seed);

} // namespace coarse
