#include "coarse/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "coarse/errors.hpp"
#include "coarse/rng.hpp"
#include "coarse/simplex.hpp"

namespace coarse {

CutSystem::CutSystem(int n) : n_(n) {
    if (n < 2) throw DomainError("CutSystem: need at least 2 points");
    if (n > 16)
        throw DomainError("CutSystem: n = " + std::to_string(n) +
                          " exceeds the cut-enumeration limit 16");
}

namespace {

std::vector<std::pair<int, int>> all_pairs(int n) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    return pairs;
}

} // namespace

L1AverageResult max_l1_average(const FiniteMetricSpace& space,
                               const std::vector<std::pair<int, int>>& pairs,
                               const std::vector<double>& mu) {
    const int n = space.size();
    if (n > 16)
        throw DomainError("max_l1_average: n = " + std::to_string(n) +
                          " exceeds the cut-enumeration limit 16");
    if (pairs.size() != mu.size())
        throw DomainError("max_l1_average: pairs and mu lengths differ");
    for (double w : mu)
        if (w < 0.0) throw DomainError("max_l1_average: negative measure weight");
    for (const auto& [u, v] : pairs)
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw DomainError("max_l1_average: pair index out of range");

    const CutSystem cuts(n);
    const int nc = cuts.count();
    const std::vector<std::pair<int, int>> rows = all_pairs(n);

    // maximize sum_S (sum_q mu_q delta_S(q)) lambda_S
    // s.t.     sum_S delta_S(p) lambda_S <= d(p)   for every pair p.
    LinearProgram lp;
    lp.maximize = true;
    lp.objective.assign(nc, 0.0);
    for (int s = 0; s < nc; ++s) {
        const std::uint32_t mask = cuts.mask(s);
        double c = 0.0;
        for (std::size_t q = 0; q < pairs.size(); ++q)
            if (CutSystem::separates(mask, pairs[q].first, pairs[q].second)) c += mu[q];
        lp.objective[s] = c;
    }
    lp.constraints.reserve(rows.size());
    lp.senses.assign(rows.size(), ConstraintSense::LessEq);
    lp.rhs.reserve(rows.size());
    for (const auto& [u, v] : rows) {
        std::vector<double> row(nc, 0.0);
        for (int s = 0; s < nc; ++s)
            if (CutSystem::separates(cuts.mask(s), u, v)) row[s] = 1.0;
        lp.constraints.push_back(std::move(row));
        lp.rhs.push_back(space.distance(u, v));
    }

    const SimplexSolution sol = simplex_solve(lp);
    if (sol.status != SolveStatus::Optimal)
        throw std::logic_error("max_l1_average: LP not optimal (slack basis is feasible "
                               "and the objective is bounded by the distance rows)");
    L1AverageResult out;
    out.value = sol.objective;
    out.cut_weights = sol.x;
    for (double& w : out.cut_weights) w = std::max(w, 0.0);
    return out;
}

MinimaxResult minimax_measure(const FiniteMetricSpace& space, double threshold) {
    const int n = space.size();
    if (n > 14)
        throw DomainError("minimax_measure: n = " + std::to_string(n) +
                          " exceeds the limit 14");

    std::vector<std::pair<int, int>> far;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (space.distance(u, v) >= threshold) far.emplace_back(u, v);
    if (far.empty())
        throw DomainError("minimax_measure: no pair reaches distance " +
                          std::to_string(threshold) + " (max distance is " +
                          std::to_string(space.diameter()) + ")");

    const CutSystem cuts(n);
    const int nc = cuts.count();
    const std::vector<std::pair<int, int>> rows = all_pairs(n);
    const int np = static_cast<int>(rows.size());
    const int nf = static_cast<int>(far.size());

    // Variables: lambda_S >= 0 (one per cut), t free. Maximize t subject to
    //   sum_S lambda_S delta_S(p) <= d(p)   (rows 0..np-1: Lipschitz)
    //   t - sum_S lambda_S delta_S(q) <= 0  (rows np..np+nf-1: far pairs)
    // This is the LP dual of the stated min over (mu, y); mu* appears as the
    // duals of the far rows, y* as the duals of the Lipschitz rows.
    LinearProgram lp;
    lp.maximize = true;
    lp.objective.assign(nc + 1, 0.0);
    lp.objective[nc] = 1.0;
    lp.bounds.assign(nc + 1, VariableBound::NonNegative);
    lp.bounds[nc] = VariableBound::Free;

    lp.constraints.reserve(np + nf);
    lp.rhs.reserve(np + nf);
    for (const auto& [u, v] : rows) {
        std::vector<double> row(nc + 1, 0.0);
        for (int s = 0; s < nc; ++s)
            if (CutSystem::separates(cuts.mask(s), u, v)) row[s] = 1.0;
        lp.constraints.push_back(std::move(row));
        lp.rhs.push_back(space.distance(u, v));
    }
    for (const auto& [u, v] : far) {
        std::vector<double> row(nc + 1, 0.0);
        for (int s = 0; s < nc; ++s)
            if (CutSystem::separates(cuts.mask(s), u, v)) row[s] = -1.0;
        row[nc] = 1.0;
        lp.constraints.push_back(std::move(row));
        lp.rhs.push_back(0.0);
    }
    lp.senses.assign(np + nf, ConstraintSense::LessEq);

    const SimplexSolution sol = simplex_solve(lp);
    if (sol.status != SolveStatus::Optimal)
        throw std::logic_error("minimax_measure: LP not optimal (it is feasible at "
                               "lambda = 0, t = 0 and bounded by the diameter)");

    MinimaxResult out;
    out.certificate.threshold = threshold;
    out.certificate.pairs = far;
    out.certificate.value = sol.objective;
    out.cut_weights.assign(sol.x.begin(), sol.x.begin() + nc);
    for (double& w : out.cut_weights) w = std::max(w, 0.0);

    // mu* = duals of the far rows, clamped and normalized (they sum to 1 up
    // to the solver tolerance because the free column t prices to zero).
    std::vector<double> mu(nf, 0.0);
    double total = 0.0;
    for (int q = 0; q < nf; ++q) {
        mu[q] = std::max(sol.duals[np + q], 0.0);
        total += mu[q];
    }
    if (std::abs(total - 1.0) > 1e-6)
        throw std::logic_error("minimax_measure: far-pair duals sum to " +
                               std::to_string(total) + ", expected 1");
    for (double& w : mu) w /= total;
    out.certificate.mu = std::move(mu);

    if (out.certificate.value < -1e-9 ||
        out.certificate.value > space.diameter() + 1e-9)
        throw std::logic_error("minimax_measure: value outside [0, diameter]");

    // Required post-check: the inner maximization at mu* reproduces the value.
    const L1AverageResult check =
        max_l1_average(space, out.certificate.pairs, out.certificate.mu);
    out.duality_gap = std::abs(check.value - out.certificate.value);
    if (out.duality_gap > 1e-7)
        throw std::logic_error("minimax_measure: minimax gap " +
                               std::to_string(out.duality_gap) + " exceeds 1e-7");
    return out;
}

std::vector<PointCloud> cut_sample_maps(const FiniteMetricSpace& space, int count,
                                        std::uint64_t seed) {
    if (count < 1) throw DomainError("cut_sample_maps: count must be >= 1");
    const int n = space.size();
    const CutSystem cuts(n);
    const int k = 2 * n; // sampled cuts per map

    std::vector<PointCloud> maps;
    maps.reserve(count);
    for (int m = 0; m < count; ++m) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(m)));
        std::vector<std::uint32_t> masks(k);
        std::vector<double> lambda(k);
        for (int s = 0; s < k; ++s) {
            masks[s] = cuts.mask(static_cast<int>(rng.next_below(cuts.count())));
            lambda[s] = -std::log(rng.next_open_double()); // Exp(1), strictly positive
        }
        // Rescale so the worst pair ratio d'(u,v)/d(u,v) is exactly 1.
        double worst = 0.0;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                double dprime = 0.0;
                for (int s = 0; s < k; ++s)
                    if (CutSystem::separates(masks[s], u, v)) dprime += lambda[s];
                worst = std::max(worst, dprime / space.distance(u, v));
            }
        if (worst <= 0.0)
            throw std::logic_error("cut_sample_maps: degenerate sample (every cut "
                                   "separated nothing)");
        std::vector<std::vector<double>> coords(n, std::vector<double>(k, 0.0));
        for (int u = 0; u < n; ++u)
            for (int s = 0; s < k; ++s)
                if ((masks[s] >> u) & 1u) coords[u][s] = lambda[s] / worst;
        maps.emplace_back(std::move(coords), 1.0);
    }
    return maps;
}

} // namespace coarse
