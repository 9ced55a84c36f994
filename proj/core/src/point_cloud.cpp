#include "coarse/point_cloud.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "coarse/errors.hpp"

namespace coarse {

double pnorm(const std::vector<double>& v, double p) {
    if (!(p >= 1.0)) throw DomainError("pnorm: p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    if (p == 1.0) {
        double s = 0.0;
        for (double x : v) s += std::abs(x);
        return s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    }
    // Scale out the largest entry so x^p cannot overflow for big coordinates.
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x) / m, p);
    return m * std::pow(s, 1.0 / p);
}

double pnorm_distance(const std::vector<double>& a, const std::vector<double>& b,
                      double p) {
    if (a.size() != b.size())
        throw DomainError("pnorm_distance: dimension mismatch");
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    return pnorm(diff, p);
}

PointCloud::PointCloud(std::vector<std::vector<double>> points, double p) {
    if (!(p >= 1.0))
        throw DomainError("PointCloud: p must be >= 1 (or infinity), got " +
                          std::to_string(p));
    if (points.empty()) throw DomainError("PointCloud: no points");
    const std::size_t dim = points[0].size();
    if (dim == 0) throw DomainError("PointCloud: points must have dimension >= 1");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].size() != dim)
            throw DomainError("PointCloud: point " + std::to_string(i) + " has dimension " +
                              std::to_string(points[i].size()) + ", expected " +
                              std::to_string(dim));
    for (const std::vector<double>& pt : points)
        for (double x : pt)
            if (!std::isfinite(x))
                throw DomainError("PointCloud: non-finite coordinate");
    points_ = std::move(points);
    dim_ = static_cast<int>(dim);
    p_ = p;
}

double PointCloud::distance(int i, int j) const {
    return pnorm_distance(points_[i], points_[j], p_);
}

FiniteMetricSpace pnorm_metric(const PointCloud& cloud) {
    const int n = cloud.size();
    std::vector<double> flat(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = cloud.distance(i, j);
            if (d <= 0.0)
                throw DomainError("pnorm_metric: points " + std::to_string(i) + " and " +
                                  std::to_string(j) + " coincide");
            flat[static_cast<std::size_t>(i) * n + j] = d;
            flat[static_cast<std::size_t>(j) * n + i] = d;
        }
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
    return FiniteMetricSpace::trusted(std::move(labels), std::move(flat), n);
}

} // namespace coarse
