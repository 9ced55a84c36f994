#pragma once

#include <vector>

#include "coarse/metric_space.hpp"
#include "coarse/point_cloud.hpp"

namespace coarse {

// A source space, an index-aligned image cloud, and the measured two-sided
// Lipschitz data. When block_dims is nonempty the image metric is the p-sum
// of Euclidean block norms, ( sum_b ||delta block_b||_2^p )^(1/p) — the
// natural norm of a direct sum of Hilbertian blocks, which coincides with
// the plain p-norm only at p = 2. Empty block_dims means the image cloud's
// own p-norm.
struct EmbeddingMap {
    FiniteMetricSpace source;
    PointCloud image;
    std::vector<int> block_dims; // empty, or sums to image.dimension()
    double lip = 0.0;   // max over pairs of image distance / source distance
    double colip = 0.0; // max over pairs of source distance / image distance

    double distortion() const { return lip * colip; }
    double image_distance(int i, int j) const;

    // Measures lip/colip from the data. Throws DomainError when two distinct
    // source points share an image (colip would be infinite).
    static EmbeddingMap measured(FiniteMetricSpace source, PointCloud image,
                                 std::vector<int> block_dims = {});
};

// Dyadic shell structure of a Euclidean cloud, rescaled so the minimum
// nonzero norm is exactly 1. Shell S_i = {a : 2^(i-1) <= ||a|| <= 2^i} for
// i = 1..top_shell; Z_i = span{a : ||a|| <= 2^i} carries a nested
// orthonormal basis built by modified Gram-Schmidt in (shell, index) order.
// The target Y stacks blocks i = 1..top_shell+1 of width dim Z_i.
struct ShellDecomposition {
    double scale = 1.0; // multiplier applied to the input points
    std::vector<std::vector<double>> scaled_points;
    std::vector<double> norms; // of the scaled points
    int top_shell = 1;
    std::vector<std::vector<double>> basis; // nested orthonormal vectors
    std::vector<int> block_dims;            // width of block i = dims[i-1], i = 1..top_shell+1
    std::vector<int> block_offsets;         // prefix offsets into Y
    int total_dim = 0;

    // Smallest shell index i >= 1 with norm <= 2^i; `norm` must be >= 1.
    int shell_of(double norm) const;
    // Does the closed shell S_i contain this norm?
    static bool in_shell(double norm, int i);

    // phi evaluated on scaled point `index` through shell `shell` (which must
    // contain its norm): the interpolation
    //   ((2^i - r)/2^(i-1)) E_i(a)  in block i   plus
    //   ((r - 2^(i-1))/2^(i-1)) E_(i+1)(a)  in block i+1.
    // The zero vector maps to the zero of Y.
    std::vector<double> evaluate(int index, int shell) const;
    std::vector<double> evaluate(int index) const; // canonical shell
};

struct ShellEmbeddingResult {
    EmbeddingMap map; // source = the input cloud's p=2 metric
    ShellDecomposition decomposition;
    double target_p = 2.0;
};

// Proposition-style shell interpolation embedding of a Euclidean cloud into
// the target_p-sum of Euclidean blocks. Requires p = 2 input, at least one
// nonzero point, distinct points; target_p in [1, inf]. The zero vector, if
// present, maps to 0 and is checked by direct norm comparison rather than
// the shell cases.
ShellEmbeddingResult shell_embedding(const PointCloud& cloud, double target_p);

// Distortion bookkeeping for every unordered pair, with ||a|| >= ||b||:
// tag 1 = same shell (bounds [d/10, 5d]), tag 2 = consecutive shells
// ([d/5, 7d]), tag 3 = distant shells ([max(||a||/2, d/4),
// min(||a||+||b||, 4d)]), tag 0 = pair involving the origin ([d/2, d]).
// Distances d are in the rescaled source.
struct PairCase {
    int u = 0, v = 0; // cloud indices with norm(u) >= norm(v)
    int tag = 0;
    double source_distance = 0.0; // rescaled
    double image_distance = 0.0;
    double lower = 0.0, upper = 0.0;
    bool ok = true;
};

struct CaseBreakdown {
    std::vector<PairCase> pairs;
    int violations = 0;
    int count_same = 0, count_consecutive = 0, count_distant = 0, count_origin = 0;
};

CaseBreakdown case_breakdown(const ShellEmbeddingResult& result);

// Classical-scaling realization of the square-root transform: the output
// Euclidean distances SQUARED reproduce the input l1 distances. The map's
// source is the snowflake metric sqrt(||x-y||_1), against which it is an
// isometry.
struct SchoenbergResult {
    EmbeddingMap map;          // image p = 2
    double min_eigenvalue = 0.0; // of the centered Gram matrix, before clipping
    double max_pair_error = 0.0; // max |squared image distance - l1 distance|
};

SchoenbergResult schoenberg_l1_to_l2(const PointCloud& cloud); // requires p = 1

// Gaussian-kernel map into the unit sphere of R^n: bandwidth
// t = R^2 / ln(1/(1 - eps^2/2)), kernel K(x,y) = exp(-d(x,y)^2/t),
// factored so that ||z(x)-z(y)||^2 = 2 - 2 K(x,y). Then d <= R implies
// ||z(x)-z(y)|| <= eps, with equality at d = R, and image distances climb
// toward sqrt(2) as d grows. Requires R > 0, 0 < eps < sqrt(2).
//
// Kernels of non-Euclidean sources need not be PSD; negative eigenvalues are
// clipped to zero and reported via clip_magnitude, in which case the
// displacement identity is only approximate (max_identity_error says by how
// much).
struct GaussianMapResult {
    PointCloud sphere; // p = 2, dimension n
    double t = 0.0;
    double min_eigenvalue = 0.0;
    double clip_magnitude = 0.0;     // |most negative eigenvalue| clipped, else 0
    double max_identity_error = 0.0; // max |  ||dz||^2 - (2 - 2K)  |
};

GaussianMapResult gaussian_dg_map(const FiniteMetricSpace& space, double R, double eps);

// Mazur map between unit spheres: x_k -> sign(x_k) |x_k|^(2/p), l2 sphere to
// l_p sphere. Exact identity at p = 2. Requires | ||x||_2 - 1 | <= 1e-6 and
// finite p >= 1.
std::vector<double> mazur_map(const std::vector<double>& unit_l2, double target_p);

// Per-bin coarse moduli of a concrete map: equal-width bins over
// [0, source diameter], per bin the min (rho1) and max (rho2) image
// distance. Empty bins carry count 0 and NaN moduli.
struct ModuliEstimate {
    std::vector<double> bin_lo, bin_hi;
    std::vector<int> count;
    std::vector<double> rho1, rho2; // NaN when count == 0
};

ModuliEstimate empirical_moduli(const EmbeddingMap& map, int bin_count);

struct BlockInfo {
    double threshold = 0.0; // far-pair threshold t_i
    double R = 0.0;         // kernel reference radius (= t_i)
    double eps = 0.0;       // chosen kernel eps
    double kernel_t = 0.0;  // resulting bandwidth
    double delta = 0.0;     // min composed image distance over far pairs
    double near_max = 0.0;  // max composed image distance over pairs d <= i
    double clip_magnitude = 0.0;
    double rho1_at_threshold = 0.0; // min assembled distance over far pairs
};

struct CoarseEmbeddingResult {
    EmbeddingMap map; // image p = target_p, flat (p-sum of l_p blocks)
    ModuliEstimate moduli;
    std::vector<BlockInfo> blocks;

    // The upper-modulus certificate sum_{i < ceil(r)} 2 i / delta_i +
    // sum_{i >= ceil(r)} 2^-i (closed-form tail); every pair at source
    // distance r has assembled image distance at most this.
    double rho2_formula(double r) const;
};

// The assembled coarse embedding: per block i = 1..m, a Gaussian-kernel map
// with R = t_i whose eps is picked by a deterministic geometric grid search
// (largest feasible delta_i, ties to the smaller eps index) so that pairs at
// source distance <= i land within delta_i/(i 2^i) of each other AFTER
// composing with the Mazur map into the l_p sphere (delta_i = min composed
// distance over pairs with d >= t_i); block coordinates are
// (i/delta_i) (zeta_i(x) - zeta_i(x_0)) with x_0 = point 0, concatenated
// under the l_p-sum norm. Far pairs of block i end at assembled distance
// >= i, near pairs contribute <= 2^-i per block. Requires finite
// target_p >= 1, strictly increasing thresholds with t_i > i, and at least
// one pair at distance >= t_i for every block. Kernel rows are normalized
// onto the unit sphere before the Mazur map (a no-op for PSD kernels).
CoarseEmbeddingResult assemble_coarse_embedding(const FiniteMetricSpace& space,
                                                double target_p,
                                                const std::vector<double>& thresholds,
                                                int moduli_bins = 16);

} // namespace coarse
