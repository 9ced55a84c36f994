#include "coarse/obstruction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coarse/errors.hpp"

namespace coarse {

PoincareReport poincare_ratio(const RegularGraph& g, double lambda2,
                              const PointCloud& images) {
    const int n = g.vertex_count();
    if (images.size() != n)
        throw DomainError("poincare_ratio: " + std::to_string(images.size()) +
                          " image points for " + std::to_string(n) + " vertices");
    if (images.p() != 2.0)
        throw DomainError("poincare_ratio: images must carry p = 2");
    const double k = static_cast<double>(g.degree());
    const double gap = k - lambda2;
    if (!(gap > 0.0))
        throw DomainError("poincare_ratio: spectral gap is not positive (graph "
                          "disconnected or lambda2 wrong)");

    PoincareReport rep;
    rep.bound = k / gap;

    double pair_sum = 0.0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            const double d = images.distance(u, v);
            pair_sum += 2.0 * d * d; // ordered pairs count (u,v) and (v,u)
        }
    // Coincident pairs (u,u) contribute zero but enlarge the denominator to n^2.
    rep.mean_pair_sq = pair_sum / (static_cast<double>(n) * n);

    double edge_sum = 0.0;
    for (const auto& [u, v] : g.edges()) {
        const double d = images.distance(u, v);
        edge_sum += d * d;
    }
    rep.mean_edge_sq = edge_sum / static_cast<double>(g.edges().size());

    if (rep.mean_edge_sq <= 0.0) {
        // Edge images all coincide; for a connected graph with gap > 0 the
        // Poincaré inequality then forces every image to coincide.
        rep.degenerate = true;
        rep.ratio = 0.0;
        return rep;
    }
    rep.ratio = rep.mean_pair_sq / rep.mean_edge_sq;
    rep.violates_bound = rep.ratio > rep.bound + 1e-9;
    return rep;
}

PoincareReport poincare_ratio(const RegularGraph& g, const PointCloud& images) {
    return poincare_ratio(g, spectral_gap(g).lambda2, images);
}

std::vector<ModuliConstraint> moduli_cap(const std::vector<CertifiedGraph>& family,
                                         double L, double t) {
    if (!(L > 0.0)) throw DomainError("moduli_cap: L must be > 0");
    std::vector<ModuliConstraint> out;
    out.reserve(family.size());
    for (const CertifiedGraph& member : family) {
        const int n = member.graph.vertex_count();
        const double k = static_cast<double>(member.graph.degree());
        const double gap = member.certificate.gap;
        if (!(gap > 0.0))
            throw DomainError("moduli_cap: member with n = " + std::to_string(n) +
                              " has nonpositive spectral gap");
        ModuliConstraint c;
        c.n = n;
        c.t = t;
        c.bound = k / gap;

        const FiniteMetricSpace metric = graph_metric(member.graph);
        long long far = 0;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (metric.distance(u, v) >= t) ++far;
        // Ordered pairs with the coincident ones in the denominator, matching
        // the Poincaré convention. (u,u) pairs count as far only when t <= 0.
        c.far_fraction =
            static_cast<double>(far) / (static_cast<double>(n) * static_cast<double>(n));
        if (far == 0) {
            c.vacuous = true;
            c.rho1_cap = 0.0;
        } else {
            c.rho1_cap = std::sqrt(c.bound * L * L / c.far_fraction);
        }
        out.push_back(c);
    }
    return out;
}

WeakContainmentReport check_weak_containment(const std::vector<WitnessMap>& series) {
    WeakContainmentReport rep;
    if (series.empty()) throw DomainError("check_weak_containment: empty series");

    for (const WitnessMap& w : series) {
        const int n = w.graph.vertex_count();
        if (static_cast<int>(w.assignment.size()) != n)
            throw DomainError("check_weak_containment: assignment size " +
                              std::to_string(w.assignment.size()) + " for " +
                              std::to_string(n) + " vertices");
        for (int img : w.assignment)
            if (img < 0 || img >= w.target.size())
                throw DomainError("check_weak_containment: assignment target out of range");

        // Graph metrics are geodesic along edges, so the edge maximum is the
        // exact Lipschitz constant.
        double lip = 0.0;
        for (const auto& [u, v] : w.graph.edges())
            lip = std::max(lip, w.target.distance(w.assignment[u], w.assignment[v]));
        rep.lip.push_back(lip);

        std::vector<int> fiber(w.target.size(), 0);
        for (int img : w.assignment) ++fiber[img];
        int largest = 0;
        for (int f : fiber) largest = std::max(largest, f);
        rep.max_fiber_fraction.push_back(static_cast<double>(largest) /
                                         static_cast<double>(n));
    }

    rep.sup_lip = *std::max_element(rep.lip.begin(), rep.lip.end());

    bool nonincreasing = true;
    for (std::size_t i = 1; i < rep.max_fiber_fraction.size(); ++i)
        if (rep.max_fiber_fraction[i] > rep.max_fiber_fraction[i - 1] + 1e-12)
            nonincreasing = false;
    const double first = rep.max_fiber_fraction.front();
    const double last = rep.max_fiber_fraction.back();
    const double floor_last = 1.0 / static_cast<double>(series.back().graph.vertex_count());
    rep.fiber_trend_vanishing =
        nonincreasing && (last < first - 1e-12 || last <= floor_last + 1e-12);
    rep.consistent = rep.fiber_trend_vanishing;
    return rep;
}

CertificateAverage certificate_average(const PointCloud& images,
                                       const MeasureCertificate& certificate,
                                       const FiniteMetricSpace& source) {
    const int n = source.size();
    if (images.size() != n)
        throw DomainError("certificate_average: image/source size mismatch");
    if (images.p() != 1.0)
        throw DomainError("certificate_average: images must carry p = 1");
    for (const auto& [u, v] : certificate.pairs)
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw DomainError("certificate_average: certificate pair out of range");

    CertificateAverage out;
    for (std::size_t q = 0; q < certificate.pairs.size(); ++q)
        out.average += certificate.mu[q] * images.distance(certificate.pairs[q].first,
                                                           certificate.pairs[q].second);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            out.lip = std::max(out.lip, images.distance(u, v) / source.distance(u, v));
    out.ratio = (out.lip > 0.0) ? out.average / out.lip : 0.0;
    return out;
}

} // namespace coarse
