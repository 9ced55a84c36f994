#pragma once

#include <vector>

#include "coarse/expander.hpp"
#include "coarse/game.hpp"
#include "coarse/graph.hpp"
#include "coarse/point_cloud.hpp"

namespace coarse {

// Poincaré comparison of a Euclidean image of a regular graph.
//
// Convention (load-bearing, tested): mean_pair_sq averages the squared image
// distance over ALL ordered vertex pairs including coincident ones, i.e.
// denominator n^2. With that convention the spectral identity
//   sum_{ordered pairs incl. coincident} ||f(u)-f(v)||^2 = 2n sum_v ||f(v)-mean||^2
// is exact, and combining it with the Laplacian bound
//   (k - lambda2) sum_v ||f(v)-mean||^2 <= sum_{edges} ||f(u)-f(v)||^2
// gives ratio = mean_pair_sq / mean_edge_sq <= k/(k - lambda2) for every map.
// mean_edge_sq averages over the nk/2 undirected edges.
struct PoincareReport {
    double mean_pair_sq = 0.0;
    double mean_edge_sq = 0.0;
    double ratio = 0.0;  // mean_pair_sq / mean_edge_sq, 0 when degenerate
    double bound = 0.0;  // k / (k - lambda2)
    bool degenerate = false;     // all image points coincide; ratio undefined
    bool violates_bound = false; // ratio > bound + 1e-9 (an implementation bug)
};

// Requires images index-aligned with vertices, p = 2, connected graph with
// positive spectral gap. The lambda2 overload avoids recomputing the
// spectrum in stress loops.
PoincareReport poincare_ratio(const RegularGraph& g, double lambda2,
                              const PointCloud& images);
PoincareReport poincare_ratio(const RegularGraph& g, const PointCloud& images);

// What the Poincaré bound says about coarse moduli: any map with Lipschitz
// constant <= L (edge distance 1) has mean_pair_sq <= bound * L^2, so the
// fraction of ordered pairs (coincident included, denominator n^2) at source
// distance >= t caps rho1(t) by sqrt(bound * L^2 / far_fraction).
struct ModuliConstraint {
    int n = 0;
    double t = 0.0;
    double far_fraction = 0.0;
    double bound = 0.0;    // k / (k - lambda2)
    double rho1_cap = 0.0; // sqrt(bound * L^2 / far_fraction); 0 when vacuous
    bool vacuous = false;  // no pair reaches distance t
};

std::vector<ModuliConstraint> moduli_cap(const std::vector<CertifiedGraph>& family,
                                         double L, double t);

// One witness map of a graph into a finite target space: vertex v is sent to
// target point assignment[v].
struct WitnessMap {
    SimpleGraph graph;
    FiniteMetricSpace target;
    std::vector<int> assignment;
};

struct WeakContainmentReport {
    std::vector<double> lip;                // max image distance over edges
    std::vector<double> max_fiber_fraction; // max_v |f^{-1}(v)| / |V|
    double sup_lip = 0.0;
    // Finite data can refute, never prove, the vanishing-fiber condition.
    // The trend test passes when the fractions are nonincreasing (1e-12
    // slack) and either strictly drop from first to last or already sit at
    // the injectivity floor 1/|V_last|.
    bool fiber_trend_vanishing = false;
    bool consistent = false; // == fiber_trend_vanishing (boundedness of lip is
                             // a sup over finitely many numbers, always finite)
};

WeakContainmentReport check_weak_containment(const std::vector<WitnessMap>& series);

// mu-average displacement of a concrete L1 map against a measure certificate:
// average = sum mu(u,v) ||f(u)-f(v)||_1, lip = max over pairs of
// image/source distance ratio, ratio = average / lip (0 for constant maps).
// By LP optimality, ratio <= certificate value for every map.
struct CertificateAverage {
    double average = 0.0;
    double lip = 0.0;
    double ratio = 0.0;
};

CertificateAverage certificate_average(const PointCloud& images,
                                       const MeasureCertificate& certificate,
                                       const FiniteMetricSpace& source);

} // namespace coarse
