#include "coarse/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coarse/errors.hpp"

namespace coarse {

std::string MetricViolation::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::NotSquare:
            os << "row " << i << " has wrong length";
            break;
        case Kind::Diagonal:
            os << "d(" << i << "," << i << ") = " << amount << ", expected 0";
            break;
        case Kind::Asymmetry:
            os << "d(" << i << "," << j << ") and d(" << j << "," << i
               << ") differ by " << amount;
            break;
        case Kind::NonPositive:
            os << "d(" << i << "," << j << ") = " << amount
               << " is not strictly positive";
            break;
        case Kind::Triangle:
            os << "d(" << i << "," << j << ") exceeds d(" << i << "," << k
               << ") + d(" << k << "," << j << ") by " << amount;
            break;
    }
    return os.str();
}

std::string MetricValidation::summary() const {
    std::ostringstream os;
    os << violations.size() << " metric violation(s)";
    const std::size_t shown = std::min<std::size_t>(violations.size(), 20);
    for (std::size_t v = 0; v < shown; ++v) os << "; " << violations[v].describe();
    if (shown < violations.size()) os << "; ...";
    return os.str();
}

MetricValidation validate_metric(const std::vector<std::vector<double>>& matrix,
                                 double tolerance) {
    MetricValidation out;
    const int n = static_cast<int>(matrix.size());
    auto push = [&out](MetricViolation v) {
        out.ok = false;
        if (out.violations.size() < 1000) out.violations.push_back(std::move(v));
    };

    for (int i = 0; i < n; ++i)
        if (matrix[i].size() != static_cast<std::size_t>(n)) {
            push({MetricViolation::Kind::NotSquare, i, -1, -1,
                  static_cast<double>(matrix[i].size())});
            return out; // shape is broken; later checks would be nonsense
        }

    for (int i = 0; i < n; ++i) {
        if (std::abs(matrix[i][i]) > tolerance)
            push({MetricViolation::Kind::Diagonal, i, i, -1, matrix[i][i]});
        for (int j = i + 1; j < n; ++j) {
            const double gap = std::abs(matrix[i][j] - matrix[j][i]);
            if (gap > tolerance)
                push({MetricViolation::Kind::Asymmetry, i, j, -1, gap});
            if (!(matrix[i][j] > tolerance))
                push({MetricViolation::Kind::NonPositive, i, j, -1, matrix[i][j]});
        }
    }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const double excess = matrix[i][j] - matrix[i][k] - matrix[k][j];
                if (excess > tolerance)
                    push({MetricViolation::Kind::Triangle, i, j, k, excess});
            }
        }
    return out;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     const std::vector<std::vector<double>>& dist,
                                     double tolerance) {
    const int n = static_cast<int>(dist.size());
    if (labels.size() != static_cast<std::size_t>(n))
        throw DomainError("FiniteMetricSpace: " + std::to_string(labels.size()) +
                          " labels for " + std::to_string(n) + " points");
    if (n == 0) throw DomainError("FiniteMetricSpace: empty space");
    const MetricValidation check = validate_metric(dist, tolerance);
    if (!check.ok)
        throw DomainError("FiniteMetricSpace: " + check.summary());
    n_ = n;
    labels_ = std::move(labels);
    d_.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d_[static_cast<std::size_t>(i) * n + j] = dist[i][j];
    // Store an exactly symmetric copy with a clean diagonal so downstream
    // code can rely on bitwise symmetry even when the input had roundoff.
    for (int i = 0; i < n; ++i) {
        d_[static_cast<std::size_t>(i) * n + i] = 0.0;
        for (int j = i + 1; j < n; ++j)
            d_[static_cast<std::size_t>(j) * n + i] = d_[static_cast<std::size_t>(i) * n + j];
    }
}

FiniteMetricSpace FiniteMetricSpace::trusted(std::vector<std::string> labels,
                                             std::vector<double> flat, int n) {
    if (n <= 0 || labels.size() != static_cast<std::size_t>(n) ||
        flat.size() != static_cast<std::size_t>(n) * n)
        throw std::logic_error("FiniteMetricSpace::trusted: inconsistent sizes");
    FiniteMetricSpace s;
    s.n_ = n;
    s.labels_ = std::move(labels);
    s.d_ = std::move(flat);
    return s;
}

double FiniteMetricSpace::diameter() const {
    double m = 0.0;
    for (double x : d_) m = std::max(m, x);
    return m;
}

double FiniteMetricSpace::min_positive_distance() const {
    double m = 0.0;
    bool seen = false;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            const double x = distance(i, j);
            if (!seen || x < m) {
                m = x;
                seen = true;
            }
        }
    return seen ? m : 0.0;
}

std::vector<std::vector<double>> FiniteMetricSpace::matrix() const {
    std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) out[i][j] = distance(i, j);
    return out;
}

GeometryProfile bounded_geometry_profile(const FiniteMetricSpace& space,
                                         const std::vector<double>& radii) {
    if (radii.empty()) throw DomainError("bounded_geometry_profile: no radii");
    for (std::size_t r = 0; r < radii.size(); ++r) {
        if (radii[r] < 0.0)
            throw DomainError("bounded_geometry_profile: negative radius");
        if (r > 0 && radii[r] <= radii[r - 1])
            throw DomainError("bounded_geometry_profile: radii must be strictly increasing");
    }
    GeometryProfile out;
    out.radii = radii;
    out.counts.assign(radii.size(), 0);
    const int n = space.size();
    for (std::size_t r = 0; r < radii.size(); ++r) {
        int best = 0;
        for (int c = 0; c < n; ++c) {
            int inside = 0;
            for (int j = 0; j < n; ++j)
                if (space.distance(c, j) <= radii[r]) ++inside;
            best = std::max(best, inside);
        }
        out.counts[r] = best;
    }
    return out;
}

FiniteMetricSpace disjoint_union(const std::vector<FiniteMetricSpace>& blocks) {
    if (blocks.empty()) throw DomainError("disjoint_union: no blocks");
    int total = 0;
    for (const FiniteMetricSpace& b : blocks) total += b.size();

    std::vector<double> radius(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b)
        radius[b] = blocks[b].diameter() + static_cast<double>(b + 1);

    std::vector<std::string> labels;
    labels.reserve(total);
    std::vector<int> offset(blocks.size());
    int at = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        offset[b] = at;
        for (const std::string& l : blocks[b].labels())
            labels.push_back("b" + std::to_string(b) + ":" + l);
        at += blocks[b].size();
    }

    std::vector<double> flat(static_cast<std::size_t>(total) * total, 0.0);
    auto put = [&](int i, int j, double v) {
        flat[static_cast<std::size_t>(i) * total + j] = v;
        flat[static_cast<std::size_t>(j) * total + i] = v;
    };
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (int i = 0; i < blocks[b].size(); ++i)
            for (int j = i + 1; j < blocks[b].size(); ++j)
                put(offset[b] + i, offset[b] + j, blocks[b].distance(i, j));
    for (std::size_t a = 0; a < blocks.size(); ++a)
        for (std::size_t b = a + 1; b < blocks.size(); ++b) {
            const double cross = radius[a] + radius[b];
            for (int i = 0; i < blocks[a].size(); ++i)
                for (int j = 0; j < blocks[b].size(); ++j)
                    put(offset[a] + i, offset[b] + j, cross);
        }
    return FiniteMetricSpace::trusted(std::move(labels), std::move(flat), total);
}

} // namespace coarse
