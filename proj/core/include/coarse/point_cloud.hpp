#pragma once

#include <vector>

#include "coarse/metric_space.hpp"

namespace coarse {

// p-norm of a vector; p may be std::numeric_limits<double>::infinity() for
// the sup norm. Requires p >= 1.
double pnorm(const std::vector<double>& v, double p);
double pnorm_distance(const std::vector<double>& a, const std::vector<double>& b,
                      double p);

// A finite list of points in R^m together with the exponent of the norm that
// metrizes them. Construction enforces a shared dimension >= 1 and p >= 1
// (infinity allowed); coincident points are legal (clouds also serve as raw
// images of maps), only pnorm_metric() insists on injectivity.
class PointCloud {
public:
    PointCloud(std::vector<std::vector<double>> points, double p);

    int size() const { return static_cast<int>(points_.size()); }
    int dimension() const { return dim_; }
    double p() const { return p_; }
    const std::vector<double>& point(int i) const { return points_[i]; }
    const std::vector<std::vector<double>>& points() const { return points_; }
    double distance(int i, int j) const;

private:
    std::vector<std::vector<double>> points_;
    int dim_ = 0;
    double p_ = 2.0;
};

// The metric a cloud induces. Throws DomainError naming the first coincident
// pair, since a pseudometric with zero off-diagonal entries is not a metric.
FiniteMetricSpace pnorm_metric(const PointCloud& cloud);

} // namespace coarse
