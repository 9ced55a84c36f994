#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "coarse/metric_space.hpp"
#include "coarse/point_cloud.hpp"

namespace coarse {

// The 2^(n-1) - 1 nontrivial bipartitions of {0, ..., n-1}, one canonical
// representative per complementary pair: the side NOT containing point n-1,
// encoded as a bitmask over the first n-1 points and enumerated in
// increasing mask order (cut idx <-> mask idx+1). delta_S(u,v) = 1 when S
// separates u from v, else 0.
class CutSystem {
public:
    explicit CutSystem(int n); // requires 2 <= n <= 16 (enumeration scale)

    int ground_size() const { return n_; }
    int count() const { return (1 << (n_ - 1)) - 1; }
    std::uint32_t mask(int idx) const { return static_cast<std::uint32_t>(idx) + 1; }
    static bool separates(std::uint32_t mask, int u, int v) {
        return (((mask >> u) ^ (mask >> v)) & 1u) != 0;
    }

private:
    int n_;
};

// Far-pair measure certificate: a probability vector mu on the unordered
// pairs at distance >= threshold, and the certified game value
//   value = min over probability measures on those pairs of
//           max over 1-Lipschitz maps f into L1 of the mu-average of
//           ||f(u)-f(v)||_1.
// Every 1-Lipschitz map into L1 moves the mu-average by at most `value`.
struct MeasureCertificate {
    double threshold = 0.0;
    std::vector<std::pair<int, int>> pairs; // u < v, d(u,v) >= threshold
    std::vector<double> mu;                 // aligned with pairs, >= 0, sums to 1
    double value = 0.0;                     // D: 0 <= value <= diameter
};

struct L1AverageResult {
    double value = 0.0;
    std::vector<double> cut_weights; // lambda_S >= 0, indexed like CutSystem
};

// Largest mu-average displacement achievable by a 1-Lipschitz map into L1:
//   max sum_pairs mu(u,v) d'(u,v) over cut-cone metrics d' <= d.
// Exact because L1-embeddable semimetrics on a finite set are exactly the
// nonnegative cut combinations. `pairs`/`mu` are aligned; mu >= 0. n <= 16.
L1AverageResult max_l1_average(const FiniteMetricSpace& space,
                               const std::vector<std::pair<int, int>>& pairs,
                               const std::vector<double>& mu);

struct MinimaxResult {
    MeasureCertificate certificate;
    double duality_gap = 0.0;      // |max_l1_average(mu*) - value|, <= 1e-7
    std::vector<double> cut_weights; // optimal lambda of the worst-case map
};

// The optimal far-pair measure and game value, solved as one LP over the cut
// cone (variables lambda_S >= 0 and a free scalar t): maximize t subject to
//   sum_S lambda_S delta_S(p) <= d(p)            for every pair p,
//   t <= sum_S lambda_S delta_S(q)               for every far pair q.
// Its LP dual is exactly the stated min-max over (mu, y); mu* is read off
// the duals of the far rows. Post-check: max_l1_average at mu* reproduces
// the value within 1e-7 (verified on every solve). n <= 14.
MinimaxResult minimax_measure(const FiniteMetricSpace& space, double threshold);

// Random 1-Lipschitz maps into L1: nonnegative combinations of 2n sampled
// canonical cuts, rescaled so max over pairs of image/source distance is
// exactly 1. Emitted as explicit coordinates, one per sampled cut, point u
// getting lambda_S * [u in S]. Deterministic per (seed, index).
std::vector<PointCloud> cut_sample_maps(const FiniteMetricSpace& space, int count,
                                        std::uint64_t seed);

} // namespace coarse
