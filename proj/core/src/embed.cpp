#include "coarse/embed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "coarse/errors.hpp"
#include "coarse/linalg.hpp"

namespace coarse {

double EmbeddingMap::image_distance(int i, int j) const {
    if (block_dims.empty()) return image.distance(i, j);
    const std::vector<double>& a = image.point(i);
    const std::vector<double>& b = image.point(j);
    std::vector<double> block_norms(block_dims.size(), 0.0);
    int at = 0;
    for (std::size_t bi = 0; bi < block_dims.size(); ++bi) {
        double s = 0.0;
        for (int t = 0; t < block_dims[bi]; ++t, ++at) {
            const double d = a[at] - b[at];
            s += d * d;
        }
        block_norms[bi] = std::sqrt(s);
    }
    return pnorm(block_norms, image.p());
}

EmbeddingMap EmbeddingMap::measured(FiniteMetricSpace source, PointCloud image,
                                    std::vector<int> block_dims) {
    if (source.size() != image.size())
        throw DomainError("EmbeddingMap: source has " + std::to_string(source.size()) +
                          " points, image has " + std::to_string(image.size()));
    if (!block_dims.empty()) {
        int total = 0;
        for (int d : block_dims) {
            if (d < 0) throw DomainError("EmbeddingMap: negative block width");
            total += d;
        }
        if (total != image.dimension())
            throw DomainError("EmbeddingMap: block widths sum to " + std::to_string(total) +
                              ", image dimension is " + std::to_string(image.dimension()));
    }
    EmbeddingMap m{std::move(source), std::move(image), std::move(block_dims), 0.0, 0.0};
    const int n = m.source.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double src = m.source.distance(i, j);
            const double img = m.image_distance(i, j);
            if (img <= 0.0)
                throw DomainError("EmbeddingMap: points " + std::to_string(i) + " and " +
                                  std::to_string(j) + " collapse in the image");
            m.lip = std::max(m.lip, img / src);
            m.colip = std::max(m.colip, src / img);
        }
    return m;
}

// ---------------------------------------------------------------------------
// Shell embedding

int ShellDecomposition::shell_of(double norm) const {
    if (norm < 1.0) throw std::logic_error("shell_of: norm below 1 after rescaling");
    int i = 1;
    double edge = 2.0;
    while (norm > edge) {
        edge *= 2.0;
        ++i;
    }
    return i;
}

bool ShellDecomposition::in_shell(double norm, int i) {
    return i >= 1 && norm >= std::ldexp(1.0, i - 1) && norm <= std::ldexp(1.0, i);
}

std::vector<double> ShellDecomposition::evaluate(int index, int shell) const {
    std::vector<double> y(total_dim, 0.0);
    const double r = norms[index];
    if (r == 0.0) return y;
    if (!in_shell(r, shell))
        throw std::logic_error("ShellDecomposition::evaluate: norm " + std::to_string(r) +
                               " outside shell " + std::to_string(shell));
    const std::vector<double>& a = scaled_points[index];
    const double lo_edge = std::ldexp(1.0, shell - 1);
    const double c_lo = (2.0 * lo_edge - r) / lo_edge; // weight of E_shell
    const double c_hi = (r - lo_edge) / lo_edge;       // weight of E_{shell+1}

    auto add_block = [&](int block, double weight) {
        if (weight == 0.0) return;
        if (block > static_cast<int>(block_dims.size()))
            throw std::logic_error("ShellDecomposition::evaluate: block out of range");
        const int width = block_dims[block - 1];
        const int off = block_offsets[block - 1];
        for (int t = 0; t < width; ++t) y[off + t] = weight * dot(basis[t], a);
    };
    add_block(shell, c_lo);
    if (c_hi != 0.0) add_block(shell + 1, c_hi);
    return y;
}

std::vector<double> ShellDecomposition::evaluate(int index) const {
    const double r = norms[index];
    if (r == 0.0) return std::vector<double>(total_dim, 0.0);
    return evaluate(index, shell_of(r));
}

ShellEmbeddingResult shell_embedding(const PointCloud& cloud, double target_p) {
    if (cloud.p() != 2.0)
        throw DomainError("shell_embedding: input cloud must carry p = 2");
    if (!(target_p >= 1.0))
        throw DomainError("shell_embedding: target_p must be >= 1");

    const int n = cloud.size();
    ShellDecomposition dec;

    std::vector<double> raw_norms(n);
    double min_positive = 0.0;
    for (int i = 0; i < n; ++i) {
        raw_norms[i] = pnorm(cloud.point(i), 2.0);
        if (raw_norms[i] > 0.0 &&
            (min_positive == 0.0 || raw_norms[i] < min_positive))
            min_positive = raw_norms[i];
    }
    if (min_positive == 0.0)
        throw DomainError("shell_embedding: every point is the zero vector");

    dec.scale = 1.0 / min_positive;
    dec.scaled_points.resize(n);
    dec.norms.resize(n);
    for (int i = 0; i < n; ++i) {
        dec.scaled_points[i] = cloud.point(i);
        for (double& x : dec.scaled_points[i]) x *= dec.scale;
        const double r = pnorm(dec.scaled_points[i], 2.0);
        // Rounding can land the minimal point a few ulp below 1; shells start
        // at norm 1, so clamp.
        dec.norms[i] = (r > 0.0) ? std::max(r, 1.0) : 0.0;
    }

    double max_norm = 0.0;
    for (double r : dec.norms) max_norm = std::max(max_norm, r);
    dec.top_shell = 1;
    {
        double edge = 2.0;
        while (max_norm > edge) {
            edge *= 2.0;
            ++dec.top_shell;
        }
    }

    // Nested bases: feed points by (containing Z-level, index); Z_i picks up
    // all points of norm <= 2^i, so level(x) = smallest such i.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        const int lx = dec.norms[x] > 0.0 ? dec.shell_of(dec.norms[x]) : 0;
        const int ly = dec.norms[y] > 0.0 ? dec.shell_of(dec.norms[y]) : 0;
        if (lx != ly) return lx < ly;
        return x < y;
    });

    std::vector<int> level_dim(dec.top_shell + 1, 0); // k_i for i = 1..top_shell
    {
        std::size_t at = 0;
        for (int i = 1; i <= dec.top_shell; ++i) {
            while (at < order.size()) {
                const int idx = order[at];
                const double r = dec.norms[idx];
                if (r == 0.0) {
                    ++at; // the origin spans nothing
                    continue;
                }
                if (dec.shell_of(r) > i) break;
                mgs_extend(dec.basis, dec.scaled_points[idx]);
                ++at;
            }
            level_dim[i] = static_cast<int>(dec.basis.size());
        }
    }

    dec.block_dims.resize(dec.top_shell + 1); // blocks 1..top_shell+1
    for (int b = 1; b <= dec.top_shell + 1; ++b)
        dec.block_dims[b - 1] = level_dim[std::min(b, dec.top_shell)];
    dec.block_offsets.resize(dec.block_dims.size());
    int off = 0;
    for (std::size_t b = 0; b < dec.block_dims.size(); ++b) {
        dec.block_offsets[b] = off;
        off += dec.block_dims[b];
    }
    dec.total_dim = off;
    if (dec.total_dim == 0)
        throw std::logic_error("shell_embedding: empty target space");

    std::vector<std::vector<double>> images(n);
    for (int i = 0; i < n; ++i) images[i] = dec.evaluate(i);

    ShellEmbeddingResult out{
        EmbeddingMap::measured(pnorm_metric(cloud),
                               PointCloud(std::move(images), target_p), dec.block_dims),
        std::move(dec), target_p};
    return out;
}

namespace {

// Closed-shell membership set of a rescaled norm: {lo} or {lo, lo+1} on the
// dyadic boundary.
struct ShellSpan {
    int lo;
    bool boundary; // norm == 2^lo exactly, so also in S_{lo+1}
};

ShellSpan shell_span(const ShellDecomposition& dec, double norm) {
    const int lo = dec.shell_of(norm);
    return {lo, norm == std::ldexp(1.0, lo)};
}

} // namespace

CaseBreakdown case_breakdown(const ShellEmbeddingResult& result) {
    const ShellDecomposition& dec = result.decomposition;
    const int n = static_cast<int>(dec.scaled_points.size());
    CaseBreakdown out;
    out.pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);

    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            PairCase pc;
            // The proof's convention: a is the point with the larger norm.
            const bool swap = dec.norms[y] > dec.norms[x];
            pc.u = swap ? y : x;
            pc.v = swap ? x : y;
            const double ra = dec.norms[pc.u];
            const double rb = dec.norms[pc.v];
            pc.source_distance =
                pnorm_distance(dec.scaled_points[pc.u], dec.scaled_points[pc.v], 2.0);
            pc.image_distance = result.map.image_distance(pc.u, pc.v);
            const double d = pc.source_distance;

            if (rb == 0.0) {
                pc.tag = 0; // pair with the origin: ||phi(a)|| in [||a||/2, ||a||]
                pc.lower = d / 2.0;
                pc.upper = d;
                ++out.count_origin;
            } else {
                const ShellSpan sa = shell_span(dec, ra);
                const ShellSpan sb = shell_span(dec, rb);
                // Distance between the membership intervals [lo, lo+boundary].
                const int a_lo = sa.lo, a_hi = sa.lo + (sa.boundary ? 1 : 0);
                const int b_lo = sb.lo, b_hi = sb.lo + (sb.boundary ? 1 : 0);
                int gap = 0;
                if (b_hi < a_lo) gap = a_lo - b_hi;
                else if (a_hi < b_lo) gap = b_lo - a_hi;
                if (gap == 0) {
                    pc.tag = 1;
                    pc.lower = d / 10.0;
                    pc.upper = 5.0 * d;
                    ++out.count_same;
                } else if (gap == 1) {
                    pc.tag = 2;
                    pc.lower = d / 5.0;
                    pc.upper = 7.0 * d;
                    ++out.count_consecutive;
                } else {
                    pc.tag = 3;
                    pc.lower = std::max(ra / 2.0, d / 4.0);
                    pc.upper = std::min(ra + rb, 4.0 * d);
                    ++out.count_distant;
                }
            }
            const double tol = 1e-9 * (1.0 + pc.upper);
            pc.ok = pc.image_distance >= pc.lower - tol &&
                    pc.image_distance <= pc.upper + tol;
            if (!pc.ok) ++out.violations;
            out.pairs.push_back(pc);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Schoenberg and Gaussian factorizations

namespace {

struct Factorization {
    std::vector<std::vector<double>> coords; // n rows, n columns
    double min_eigenvalue = 0.0;
    double clip_magnitude = 0.0;
};

// Eigen-factorization of a symmetric matrix meant to be PSD: rows of
// V sqrt(clip(Lambda)) reproduce G up to the clipped mass.
Factorization psd_factor(const std::vector<double>& g, int n) {
    const EigenSystem es = jacobi_eigensystem(g, n, 1e-12);
    Factorization f;
    f.min_eigenvalue = es.values.empty() ? 0.0 : es.values.back();
    f.clip_magnitude = f.min_eigenvalue < 0.0 ? -f.min_eigenvalue : 0.0;
    f.coords.assign(n, std::vector<double>(n, 0.0));
    for (int t = 0; t < n; ++t) {
        const double lam = es.values[t];
        if (lam <= 0.0) continue;
        const double s = std::sqrt(lam);
        for (int x = 0; x < n; ++x) f.coords[x][t] = s * es.vectors[t][x];
    }
    return f;
}

} // namespace

SchoenbergResult schoenberg_l1_to_l2(const PointCloud& cloud) {
    if (cloud.p() != 1.0)
        throw DomainError("schoenberg_l1_to_l2: input cloud must carry p = 1");
    const int n = cloud.size();

    // Snowflake source: d(x,y) = sqrt(||x-y||_1); the image is an isometry of it.
    std::vector<double> l1(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> snow(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = cloud.distance(i, j);
            if (d <= 0.0)
                throw DomainError("schoenberg_l1_to_l2: points " + std::to_string(i) +
                                  " and " + std::to_string(j) + " coincide");
            l1[static_cast<std::size_t>(i) * n + j] = l1[static_cast<std::size_t>(j) * n + i] = d;
            const double s = std::sqrt(d);
            snow[static_cast<std::size_t>(i) * n + j] = snow[static_cast<std::size_t>(j) * n + i] = s;
        }

    // Classical scaling: G = -1/2 J D J with D the matrix of SQUARED target
    // distances, which here is the l1 matrix itself.
    std::vector<double> gram(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> row_mean(n, 0.0);
    double total_mean = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) row_mean[i] += l1[static_cast<std::size_t>(i) * n + j];
        row_mean[i] /= n;
        total_mean += row_mean[i];
    }
    total_mean /= n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            gram[static_cast<std::size_t>(i) * n + j] =
                -0.5 * (l1[static_cast<std::size_t>(i) * n + j] - row_mean[i] - row_mean[j] +
                        total_mean);

    Factorization f = psd_factor(gram, n);
    if (f.min_eigenvalue < -1e-6)
        throw DomainError("schoenberg_l1_to_l2: centered Gram matrix has eigenvalue " +
                          std::to_string(f.min_eigenvalue) +
                          "; the input distances are not l1 distances");

    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
    FiniteMetricSpace source =
        (n == 1) ? FiniteMetricSpace::trusted(std::move(labels), {0.0}, 1)
                 : FiniteMetricSpace::trusted(std::move(labels), std::move(snow), n);

    PointCloud image(std::move(f.coords), 2.0);

    SchoenbergResult out{EmbeddingMap{std::move(source), std::move(image), {}, 0.0, 0.0},
                         f.min_eigenvalue, 0.0};
    // Measure lip/colip and the defining identity in one pass.
    double diam = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double img = out.map.image_distance(i, j);
            const double src = out.map.source.distance(i, j);
            out.map.lip = std::max(out.map.lip, img / src);
            out.map.colip = std::max(out.map.colip, src / img);
            const double want = cloud.distance(i, j);
            diam = std::max(diam, want);
            out.max_pair_error = std::max(out.max_pair_error, std::abs(img * img - want));
        }
    if (out.max_pair_error > 1e-9 * std::max(1.0, diam))
        throw std::logic_error("schoenberg_l1_to_l2: factorization error " +
                               std::to_string(out.max_pair_error));
    return out;
}

GaussianMapResult gaussian_dg_map(const FiniteMetricSpace& space, double R, double eps) {
    if (!(R > 0.0)) throw DomainError("gaussian_dg_map: R must be > 0");
    if (!(eps > 0.0) || !(eps < std::sqrt(2.0)))
        throw DomainError("gaussian_dg_map: eps must lie in (0, sqrt(2))");
    const int n = space.size();

    GaussianMapResult out{PointCloud({{0.0}}, 2.0), 0.0, 0.0, 0.0, 0.0};
    out.t = R * R / std::log(1.0 / (1.0 - eps * eps / 2.0));

    std::vector<double> kernel(static_cast<std::size_t>(n) * n, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = space.distance(i, j);
            const double k = std::exp(-d * d / out.t);
            kernel[static_cast<std::size_t>(i) * n + j] = k;
            kernel[static_cast<std::size_t>(j) * n + i] = k;
        }

    Factorization f = psd_factor(kernel, n);
    out.min_eigenvalue = f.min_eigenvalue;
    out.clip_magnitude = f.clip_magnitude;
    out.sphere = PointCloud(std::move(f.coords), 2.0);

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dz = out.sphere.distance(i, j);
            const double want = 2.0 - 2.0 * kernel[static_cast<std::size_t>(i) * n + j];
            out.max_identity_error =
                std::max(out.max_identity_error, std::abs(dz * dz - want));
        }
    return out;
}

std::vector<double> mazur_map(const std::vector<double>& unit_l2, double target_p) {
    if (!(target_p >= 1.0) || !std::isfinite(target_p))
        throw DomainError("mazur_map: target_p must be finite and >= 1");
    const double norm = pnorm(unit_l2, 2.0);
    if (std::abs(norm - 1.0) > 1e-6)
        throw DomainError("mazur_map: input l2 norm " + std::to_string(norm) +
                          " deviates from 1 by more than 1e-6");
    if (target_p == 2.0) return unit_l2; // exponent 1: exact identity
    const double e = 2.0 / target_p;
    std::vector<double> out(unit_l2.size());
    for (std::size_t k = 0; k < unit_l2.size(); ++k) {
        const double x = unit_l2[k];
        out[k] = x >= 0.0 ? std::pow(x, e) : -std::pow(-x, e);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Moduli and the assembled coarse embedding

ModuliEstimate empirical_moduli(const EmbeddingMap& map, int bin_count) {
    const int n = map.source.size();
    if (n < 2) throw DomainError("empirical_moduli: need at least 2 points");
    if (bin_count < 1) throw DomainError("empirical_moduli: need at least 1 bin");

    const double diam = map.source.diameter();
    const double width = diam / bin_count;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    ModuliEstimate est;
    est.bin_lo.resize(bin_count);
    est.bin_hi.resize(bin_count);
    est.count.assign(bin_count, 0);
    est.rho1.assign(bin_count, nan);
    est.rho2.assign(bin_count, nan);
    for (int b = 0; b < bin_count; ++b) {
        est.bin_lo[b] = width * b;
        est.bin_hi[b] = width * (b + 1);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double src = map.source.distance(i, j);
            int b = width > 0.0 ? static_cast<int>(src / width) : 0;
            b = std::min(b, bin_count - 1);
            const double img = map.image_distance(i, j);
            if (est.count[b] == 0) {
                est.rho1[b] = img;
                est.rho2[b] = img;
            } else {
                est.rho1[b] = std::min(est.rho1[b], img);
                est.rho2[b] = std::max(est.rho2[b], img);
            }
            ++est.count[b];
        }
    return est;
}

double CoarseEmbeddingResult::rho2_formula(double r) const {
    const int ceil_r = static_cast<int>(std::ceil(r));
    double total = 0.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const int i = static_cast<int>(b) + 1;
        if (i < ceil_r) total += 2.0 * i / blocks[b].delta;
    }
    total += std::ldexp(1.0, 1 - std::max(ceil_r, 1)); // sum_{i >= ceil(r)} 2^-i
    return total;
}

CoarseEmbeddingResult assemble_coarse_embedding(const FiniteMetricSpace& space,
                                                double target_p,
                                                const std::vector<double>& thresholds,
                                                int moduli_bins) {
    if (!(target_p >= 1.0) || !std::isfinite(target_p))
        throw DomainError("assemble_coarse_embedding: target_p must be finite and >= 1 "
                          "(the Mazur composition needs a finite exponent)");
    if (thresholds.empty())
        throw DomainError("assemble_coarse_embedding: need at least one threshold");
    const int m = static_cast<int>(thresholds.size());
    for (int i = 0; i < m; ++i) {
        if (!(thresholds[i] > 0.0))
            throw DomainError("assemble_coarse_embedding: thresholds must be positive");
        if (i > 0 && thresholds[i] <= thresholds[i - 1])
            throw DomainError("assemble_coarse_embedding: thresholds must increase strictly");
        if (!(thresholds[i] > static_cast<double>(i + 1)))
            throw DomainError("assemble_coarse_embedding: threshold t_" +
                              std::to_string(i + 1) + " = " + std::to_string(thresholds[i]) +
                              " must exceed the block index " + std::to_string(i + 1) +
                              " (pairs at distance <= i must be near, not far)");
    }
    const int n = space.size();
    if (n < 2) throw DomainError("assemble_coarse_embedding: need at least 2 points");

    std::vector<BlockInfo> blocks;
    std::vector<std::vector<std::vector<double>>> block_coords(m);

    for (int bi = 0; bi < m; ++bi) {
        const int i = bi + 1;
        const double t_i = thresholds[bi];

        std::vector<std::pair<int, int>> far, near;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                const double d = space.distance(u, v);
                if (d >= t_i) far.emplace_back(u, v);
                if (d <= static_cast<double>(i)) near.emplace_back(u, v);
            }
        if (far.empty())
            throw DomainError("assemble_coarse_embedding: no pair reaches threshold t_" +
                              std::to_string(i) + " = " + std::to_string(t_i) +
                              " (max distance is " + std::to_string(space.diameter()) + ")");

        const double separation_factor = static_cast<double>(i) * std::ldexp(1.0, i);

        BlockInfo best;
        std::vector<std::vector<double>> best_points;
        bool found = false;
        double best_ratio_seen = 0.0; // best delta/near ratio for the error message

        for (int j = 1; j <= 96; ++j) {
            const double eps = std::sqrt(2.0) * std::pow(2.0, -j / 8.0);
            GaussianMapResult g = gaussian_dg_map(space, t_i, eps);

            // Project onto the unit sphere (identity up to rounding for PSD
            // kernels) and push through the Mazur map.
            std::vector<std::vector<double>> pts(n);
            for (int x = 0; x < n; ++x) {
                std::vector<double> v = g.sphere.point(x);
                const double norm = pnorm(v, 2.0);
                for (double& c : v) c /= norm;
                pts[x] = mazur_map(v, target_p);
            }
            auto dist = [&](int u, int v) {
                return pnorm_distance(pts[u], pts[v], target_p);
            };

            double near_max = 0.0;
            for (const auto& [u, v] : near) near_max = std::max(near_max, dist(u, v));
            double delta = std::numeric_limits<double>::infinity();
            for (const auto& [u, v] : far) delta = std::min(delta, dist(u, v));

            if (near_max > 0.0)
                best_ratio_seen = std::max(best_ratio_seen, delta / near_max);
            const bool feasible = delta > 0.0 && near_max * separation_factor <= delta;
            if (feasible && (!found || delta > best.delta)) {
                found = true;
                best.threshold = t_i;
                best.R = t_i;
                best.eps = eps;
                best.kernel_t = g.t;
                best.delta = delta;
                best.near_max = near_max;
                best.clip_magnitude = g.clip_magnitude;
                best_points = std::move(pts);
            }
        }
        if (!found)
            throw DomainError(
                "assemble_coarse_embedding: no kernel bandwidth separates far pairs (d >= " +
                std::to_string(t_i) + ") from near pairs (d <= " + std::to_string(i) +
                ") by the required factor " + std::to_string(separation_factor) +
                " for block " + std::to_string(i) + "; best achieved ratio " +
                std::to_string(best_ratio_seen));

        // Block contribution (i/delta_i) (zeta_i(x) - zeta_i(x_0)).
        const double scale = static_cast<double>(i) / best.delta;
        block_coords[bi].resize(n);
        for (int x = 0; x < n; ++x) {
            std::vector<double> c(n);
            for (int d = 0; d < n; ++d)
                c[d] = scale * (best_points[x][d] - best_points[0][d]);
            block_coords[bi][x] = std::move(c);
        }
        blocks.push_back(best);
    }

    std::vector<std::vector<double>> coords(n);
    for (int x = 0; x < n; ++x) {
        coords[x].reserve(static_cast<std::size_t>(m) * n);
        for (int bi = 0; bi < m; ++bi)
            coords[x].insert(coords[x].end(), block_coords[bi][x].begin(),
                             block_coords[bi][x].end());
    }

    // The p-sum of l_p blocks is the flat l_p norm of the concatenation, so
    // no block structure is needed on the image.
    EmbeddingMap map = EmbeddingMap::measured(space, PointCloud(std::move(coords), target_p));

    for (int bi = 0; bi < m; ++bi) {
        double rho1 = std::numeric_limits<double>::infinity();
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (space.distance(u, v) >= thresholds[bi])
                    rho1 = std::min(rho1, map.image_distance(u, v));
        blocks[bi].rho1_at_threshold = rho1;
    }
    ModuliEstimate moduli = empirical_moduli(map, moduli_bins);
    return CoarseEmbeddingResult{std::move(map), std::move(moduli), std::move(blocks)};
}

} // namespace coarse
