#pragma once

#include <string>
#include <vector>

namespace coarse {

struct MetricViolation {
    enum class Kind { NotSquare, Diagonal, Asymmetry, NonPositive, Triangle };
    Kind kind;
    int i = -1;
    int j = -1;
    int k = -1;          // middle point, Triangle only
    double amount = 0.0; // magnitude of the violation
    std::string describe() const;
};

struct MetricValidation {
    bool ok = true;
    std::vector<MetricViolation> violations;
    std::string summary() const; // one line per violation, capped at 20
};

// Checks all metric axioms on a square matrix: zero diagonal, symmetry,
// strictly positive off-diagonal entries, and every triangle inequality.
// `tolerance` absorbs floating-point noise; pass 0 for integer matrices.
MetricValidation validate_metric(const std::vector<std::vector<double>>& matrix,
                                 double tolerance = 1e-12);

// A finite metric space: labeled points plus the full distance matrix,
// stored flat row-major. Immutable after construction.
class FiniteMetricSpace {
public:
    // Validates and throws DomainError carrying the violation summary.
    FiniteMetricSpace(std::vector<std::string> labels,
                      const std::vector<std::vector<double>>& dist,
                      double tolerance = 1e-12);

    // Construction path for distances that are metrics by construction
    // (graph shortest paths, norms of distinct points, block unions); skips
    // the O(n^3) validation. `flat` is row-major n x n.
    static FiniteMetricSpace trusted(std::vector<std::string> labels,
                                     std::vector<double> flat, int n);

    int size() const { return n_; }
    double distance(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::vector<std::string>& labels() const { return labels_; }
    double diameter() const;
    double min_positive_distance() const;
    std::vector<std::vector<double>> matrix() const; // row copies, for IO

private:
    FiniteMetricSpace() = default;
    int n_ = 0;
    std::vector<std::string> labels_;
    std::vector<double> d_;
};

struct GeometryProfile {
    std::vector<double> radii; // as requested (must be nonnegative, increasing)
    std::vector<int> counts;   // M(r): max points in any closed ball of radius r
};

// Growth profile of the space: for each radius the size of the fullest
// closed ball. Radii must be nonnegative and strictly increasing.
GeometryProfile bounded_geometry_profile(const FiniteMetricSpace& space,
                                         const std::vector<double>& radii);

// Disjoint union of blocks: each block keeps its metric, and points in
// distinct blocks i < j (0-based) sit at distance R_i + R_j where
// R_b = diam(block b) + (b+1). Since R_i + R_j > max(diam_i, diam_j), every
// cross triangle closes and the result is again a metric. Labels are
// prefixed "b<i>:" to stay unique.
FiniteMetricSpace disjoint_union(const std::vector<FiniteMetricSpace>& blocks);

} // namespace coarse
