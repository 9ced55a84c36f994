#pragma once

#include <vector>

namespace coarse {

struct EigenSystem {
    std::vector<double> values;                // sorted descending
    std::vector<std::vector<double>> vectors;  // vectors[j] pairs with values[j]
};

// Dense symmetric eigensolver: cyclic Jacobi sweeps in fixed (p, q) order (no
// pivot search, hence deterministic) until the off-diagonal Frobenius norm
// drops to `off_tolerance`. `sym` is the n x n matrix in row-major order;
// only symmetry up to roundoff is assumed (the strict lower triangle wins).
EigenSystem jacobi_eigensystem(const std::vector<double>& sym, int n,
                               double off_tolerance = 1e-12);

// Eigenvalues only, same algorithm.
std::vector<double> jacobi_eigenvalues(const std::vector<double>& sym, int n,
                                       double off_tolerance = 1e-12);

// Modified Gram-Schmidt with re-orthogonalization. Feeds `candidate` through
// the current orthonormal set `basis`; when the residual norm exceeds
// `independence_tol` times the candidate norm, appends the normalized residual
// and returns true, otherwise leaves the basis unchanged and returns false.
bool mgs_extend(std::vector<std::vector<double>>& basis,
                const std::vector<double>& candidate,
                double independence_tol = 1e-10);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);

} // namespace coarse
