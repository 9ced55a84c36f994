#pragma once

#include <string>
#include <vector>

namespace coarse {

enum class ConstraintSense { LessEq, Equal, GreaterEq };
enum class VariableBound { NonNegative, Free };
enum class SolveStatus { Optimal, Unbounded, Infeasible };

struct LinearProgram {
    std::vector<double> objective;               // length = variable count
    std::vector<std::vector<double>> constraints; // dense rows
    std::vector<ConstraintSense> senses;          // one per row
    std::vector<double> rhs;                      // one per row
    std::vector<VariableBound> bounds;            // per variable; empty = all NonNegative
    bool maximize = true;

    void check_dimensions() const; // throws DomainError on inconsistency
};

struct SimplexSolution {
    SolveStatus status = SolveStatus::Optimal;
    std::vector<double> x;       // original variables (Optimal only)
    double objective = 0.0;      // in the problem's own sense
    std::vector<double> duals;   // one per row, signed so that duals . rhs = objective
    double duality_gap = 0.0;    // |primal - dual objective| as verified
    int iterations = 0;
};

// Two-phase dense primal simplex in double precision. Pricing is Dantzig
// (most negative reduced cost) and switches permanently to Bland's
// smallest-index rule after 64 consecutive non-improving pivots, which
// guarantees termination on degenerate problems. Feasibility tolerance 1e-9.
//
// On Optimal the solver checks strong duality internally: the dual solution
// read off the final tableau must reproduce the primal objective within
// 1e-7 * (1 + |objective|), else a std::logic_error is thrown (solver bug,
// never a caller error). A stalled pivot (iteration cap) throws
// std::logic_error carrying a plain-text dump of the current basis.
SimplexSolution simplex_solve(const LinearProgram& lp);

} // namespace coarse
