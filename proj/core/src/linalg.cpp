#include "coarse/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace coarse {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::logic_error("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

namespace {

double off_diagonal_norm(const std::vector<double>& m, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += 2.0 * m[i * n + j] * m[i * n + j];
    return std::sqrt(s);
}

// One full cyclic sweep of Jacobi rotations over the strict upper triangle.
// `vecs` accumulates the rotations when non-null (row-major, rows = current
// coordinate frame, i.e. V^T with A = V diag V^T maintained as m = V^T A0 V).
void jacobi_sweep(std::vector<double>& m, int n, std::vector<double>* vecs) {
    for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const double apq = m[p * n + q];
            if (apq == 0.0) continue;
            const double app = m[p * n + p];
            const double aqq = m[q * n + q];
            const double theta = (aqq - app) / (2.0 * apq);
            // Smaller-angle root of t^2 + 2 theta t - 1 = 0, the standard
            // numerically stable choice.
            const double t = (theta >= 0.0)
                                 ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
                                 : 1.0 / (theta - std::sqrt(1.0 + theta * theta));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;

            for (int i = 0; i < n; ++i) {
                const double mip = m[i * n + p];
                const double miq = m[i * n + q];
                m[i * n + p] = c * mip - s * miq;
                m[i * n + q] = s * mip + c * miq;
            }
            for (int i = 0; i < n; ++i) {
                const double mpi = m[p * n + i];
                const double mqi = m[q * n + i];
                m[p * n + i] = c * mpi - s * mqi;
                m[q * n + i] = s * mpi + c * mqi;
            }
            m[p * n + q] = 0.0;
            m[q * n + p] = 0.0;

            if (vecs) {
                std::vector<double>& v = *vecs;
                for (int i = 0; i < n; ++i) {
                    const double vip = v[i * n + p];
                    const double viq = v[i * n + q];
                    v[i * n + p] = c * vip - s * viq;
                    v[i * n + q] = s * vip + c * viq;
                }
            }
        }
    }
}

std::vector<double> symmetrize(const std::vector<double>& sym, int n) {
    if (n < 0 || sym.size() != static_cast<std::size_t>(n) * n)
        throw std::logic_error("jacobi: matrix size does not match n");
    std::vector<double> m(sym);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) m[j * n + i] = m[i * n + j];
    return m;
}

} // namespace

EigenSystem jacobi_eigensystem(const std::vector<double>& sym, int n,
                               double off_tolerance) {
    std::vector<double> m = symmetrize(sym, n);
    std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;

    const int max_sweeps = 100;
    int sweep = 0;
    while (off_diagonal_norm(m, n) > off_tolerance) {
        if (++sweep > max_sweeps)
            throw std::logic_error("jacobi_eigensystem: no convergence in 100 sweeps");
        jacobi_sweep(m, n, &v);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return m[a * n + a] > m[b * n + b];
    });

    EigenSystem out;
    out.values.reserve(n);
    out.vectors.reserve(n);
    for (int r = 0; r < n; ++r) {
        const int j = order[r];
        out.values.push_back(m[j * n + j]);
        std::vector<double> col(n);
        for (int i = 0; i < n; ++i) col[i] = v[i * n + j];
        // Fix the sign so the result does not depend on rotation accidents:
        // the largest-magnitude entry is made positive (first one on ties).
        int arg = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(col[i]) > std::abs(col[arg])) arg = i;
        if (col[arg] < 0.0)
            for (double& x : col) x = -x;
        out.vectors.push_back(std::move(col));
    }
    return out;
}

std::vector<double> jacobi_eigenvalues(const std::vector<double>& sym, int n,
                                       double off_tolerance) {
    std::vector<double> m = symmetrize(sym, n);
    const int max_sweeps = 100;
    int sweep = 0;
    while (off_diagonal_norm(m, n) > off_tolerance) {
        if (++sweep > max_sweeps)
            throw std::logic_error("jacobi_eigenvalues: no convergence in 100 sweeps");
        jacobi_sweep(m, n, nullptr);
    }
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = m[i * n + i];
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    return vals;
}

bool mgs_extend(std::vector<std::vector<double>>& basis,
                const std::vector<double>& candidate, double independence_tol) {
    std::vector<double> r = candidate;
    const double original = norm2(candidate);
    if (original == 0.0) return false;
    // Two passes of modified Gram-Schmidt keep the basis orthonormal to
    // machine precision even for nearly dependent candidates.
    for (int pass = 0; pass < 2; ++pass)
        for (const std::vector<double>& b : basis) {
            const double c = dot(r, b);
            for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * b[i];
        }
    const double rn = norm2(r);
    if (rn <= independence_tol * original) return false;
    for (double& x : r) x /= rn;
    basis.push_back(std::move(r));
    return true;
}

} // namespace coarse
