#include "coarse/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "coarse/errors.hpp"

namespace coarse {

void LinearProgram::check_dimensions() const {
    const std::size_t nv = objective.size();
    if (nv == 0) throw DomainError("LinearProgram: no variables");
    if (constraints.size() != senses.size() || constraints.size() != rhs.size())
        throw DomainError("LinearProgram: row count mismatch between constraints, senses, rhs");
    for (std::size_t i = 0; i < constraints.size(); ++i)
        if (constraints[i].size() != nv)
            throw DomainError("LinearProgram: row " + std::to_string(i) + " has " +
                              std::to_string(constraints[i].size()) + " coefficients, expected " +
                              std::to_string(nv));
    if (!bounds.empty() && bounds.size() != nv)
        throw DomainError("LinearProgram: bounds length mismatch");
    for (double v : objective)
        if (!std::isfinite(v)) throw DomainError("LinearProgram: non-finite objective");
    for (const auto& row : constraints)
        for (double v : row)
            if (!std::isfinite(v)) throw DomainError("LinearProgram: non-finite coefficient");
    for (double v : rhs)
        if (!std::isfinite(v)) throw DomainError("LinearProgram: non-finite rhs");
}

namespace {

constexpr double kEnterTol = 1e-9; // reduced-cost threshold
constexpr double kPivotTol = 1e-9; // smallest acceptable pivot element
constexpr double kFeasTol = 1e-9;  // feasibility tolerance (spec-fixed)

// Internal column bookkeeping: which original variable (and sign) a tableau
// column realizes, or which row's slack/artificial it is.
struct Column {
    enum class Kind { Plus, Minus, Slack, Artificial } kind;
    int ref; // variable index for Plus/Minus, row index otherwise
};

std::string column_name(const Column& c) {
    switch (c.kind) {
        case Column::Kind::Plus: return "x" + std::to_string(c.ref) + "+";
        case Column::Kind::Minus: return "x" + std::to_string(c.ref) + "-";
        case Column::Kind::Slack: return "s" + std::to_string(c.ref);
        case Column::Kind::Artificial: return "a" + std::to_string(c.ref);
    }
    return "?";
}

struct Tableau {
    int m = 0, ncols = 0;
    std::vector<double> t;       // m x (ncols + 1), last column = rhs
    std::vector<double> zrow;    // reduced costs z_j - c_j, length ncols
    double zval = 0.0;           // current objective (maximization form)
    std::vector<int> basis;      // column index per row
    std::vector<Column> columns; // metadata
    std::vector<char> dead;      // columns barred from entering

    double& at(int i, int j) { return t[static_cast<std::size_t>(i) * (ncols + 1) + j]; }
    double rhs_of(int i) const { return t[static_cast<std::size_t>(i) * (ncols + 1) + ncols]; }

    std::string basis_dump() const {
        std::ostringstream os;
        os << "basis dump (" << m << " rows):";
        for (int i = 0; i < m; ++i)
            os << "\n  row " << i << ": " << column_name(columns[basis[i]])
               << " = " << rhs_of(i);
        return os.str();
    }

    void pivot(int row, int col) {
        const int stride = ncols + 1;
        double* pr = &t[static_cast<std::size_t>(row) * stride];
        const double inv = 1.0 / pr[col];
        for (int j = 0; j <= ncols; ++j) pr[j] *= inv;
        pr[col] = 1.0; // exact
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            double* ri = &t[static_cast<std::size_t>(i) * stride];
            const double f = ri[col];
            if (f == 0.0) continue;
            for (int j = 0; j <= ncols; ++j) ri[j] -= f * pr[j];
            ri[col] = 0.0; // exact
        }
        // The z-row transforms like any other row, rhs cell included:
        // objective gains -zrow[col] * (incoming value).
        const double zf = zrow[col];
        if (zf != 0.0) {
            for (int j = 0; j < ncols; ++j) zrow[j] -= zf * pr[j];
            zval -= zf * pr[ncols];
        }
        zrow[col] = 0.0;
        basis[row] = col;
    }
};

// Runs the simplex loop on the current zrow/basis until optimal, unbounded,
// or stalled. Returns true when optimal, false when unbounded.
bool run_simplex(Tableau& tab, int& iterations, const char* phase) {
    bool bland = false;
    int stagnant = 0;
    const int cap = 50000 + 20 * (tab.m + tab.ncols);
    for (;;) {
        int enter = -1;
        if (bland) {
            for (int j = 0; j < tab.ncols; ++j)
                if (!tab.dead[j] && tab.zrow[j] < -kEnterTol) {
                    enter = j;
                    break;
                }
        } else {
            double best = -kEnterTol;
            for (int j = 0; j < tab.ncols; ++j)
                if (!tab.dead[j] && tab.zrow[j] < best) {
                    best = tab.zrow[j];
                    enter = j;
                }
        }
        if (enter < 0) return true; // optimal

        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < tab.m; ++i) {
            const double a = tab.at(i, enter);
            if (a > kPivotTol) {
                const double ratio = tab.rhs_of(i) / a;
                if (leave < 0 || ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && tab.basis[i] < tab.basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) return false; // unbounded direction

        const double before = tab.zval;
        tab.pivot(leave, enter);
        ++iterations;

        if (tab.zval <= before + 1e-12) {
            if (++stagnant >= 64) bland = true; // permanent anti-cycling mode
        } else {
            stagnant = 0;
        }
        if (iterations > cap)
            throw std::logic_error(std::string("simplex_solve: pivot stalled in ") + phase +
                                   " after " + std::to_string(iterations) +
                                   " iterations\n" + tab.basis_dump());
    }
}

} // namespace

SimplexSolution simplex_solve(const LinearProgram& lp) {
    lp.check_dimensions();
    const int nv = static_cast<int>(lp.objective.size());
    const int m = static_cast<int>(lp.constraints.size());

    // Internal form: maximize, all rows with rhs >= 0, all variables >= 0.
    std::vector<double> cost(lp.objective);
    if (!lp.maximize)
        for (double& c : cost) c = -c;

    std::vector<ConstraintSense> sense(lp.senses);
    std::vector<double> b(lp.rhs);
    std::vector<char> flipped(m, 0);
    std::vector<std::vector<double>> rows(lp.constraints);
    for (int i = 0; i < m; ++i)
        if (b[i] < 0.0) {
            flipped[i] = 1;
            b[i] = -b[i];
            for (double& a : rows[i]) a = -a;
            if (sense[i] == ConstraintSense::LessEq)
                sense[i] = ConstraintSense::GreaterEq;
            else if (sense[i] == ConstraintSense::GreaterEq)
                sense[i] = ConstraintSense::LessEq;
        }

    Tableau tab;
    tab.m = m;

    // Structural columns: one per nonnegative variable, a (+,-) pair per free
    // variable.
    std::vector<int> plus_col(nv, -1), minus_col(nv, -1);
    for (int j = 0; j < nv; ++j) {
        plus_col[j] = static_cast<int>(tab.columns.size());
        tab.columns.push_back({Column::Kind::Plus, j});
        const bool is_free = !lp.bounds.empty() && lp.bounds[j] == VariableBound::Free;
        if (is_free) {
            minus_col[j] = static_cast<int>(tab.columns.size());
            tab.columns.push_back({Column::Kind::Minus, j});
        }
    }
    std::vector<int> slack_col(m, -1), art_col(m, -1);
    for (int i = 0; i < m; ++i)
        if (sense[i] != ConstraintSense::Equal) {
            slack_col[i] = static_cast<int>(tab.columns.size());
            tab.columns.push_back({Column::Kind::Slack, i});
        }
    for (int i = 0; i < m; ++i)
        if (sense[i] != ConstraintSense::LessEq) {
            art_col[i] = static_cast<int>(tab.columns.size());
            tab.columns.push_back({Column::Kind::Artificial, i});
        }

    tab.ncols = static_cast<int>(tab.columns.size());
    tab.t.assign(static_cast<std::size_t>(m) * (tab.ncols + 1), 0.0);
    tab.zrow.assign(tab.ncols, 0.0);
    tab.dead.assign(tab.ncols, 0);
    tab.basis.assign(m, -1);

    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < nv; ++j) {
            const double a = rows[i][j];
            if (a == 0.0) continue;
            tab.at(i, plus_col[j]) = a;
            if (minus_col[j] >= 0) tab.at(i, minus_col[j]) = -a;
        }
        if (slack_col[i] >= 0)
            tab.at(i, slack_col[i]) = (sense[i] == ConstraintSense::LessEq) ? 1.0 : -1.0;
        if (art_col[i] >= 0) tab.at(i, art_col[i]) = 1.0;
        tab.at(i, tab.ncols) = b[i];
        tab.basis[i] = (sense[i] == ConstraintSense::LessEq) ? slack_col[i] : art_col[i];
    }

    SimplexSolution sol;
    int iterations = 0;

    const bool need_phase1 =
        std::any_of(art_col.begin(), art_col.end(), [](int c) { return c >= 0; });
    if (need_phase1) {
        // Phase 1: maximize -sum(artificials). Basic artificials carry cost
        // -1, so z_j - c_j = -(sum of artificial-row entries of column j) - c_j.
        for (int j = 0; j < tab.ncols; ++j) {
            double z = 0.0;
            for (int i = 0; i < m; ++i)
                if (tab.basis[i] == art_col[i] && art_col[i] >= 0) z -= tab.at(i, j);
            const double cj = (tab.columns[j].kind == Column::Kind::Artificial) ? -1.0 : 0.0;
            tab.zrow[j] = z - cj;
        }
        tab.zval = 0.0;
        for (int i = 0; i < m; ++i)
            if (tab.basis[i] == art_col[i] && art_col[i] >= 0) tab.zval -= tab.rhs_of(i);

        if (!run_simplex(tab, iterations, "phase 1"))
            throw std::logic_error("simplex_solve: phase-1 objective unbounded\n" +
                                   tab.basis_dump());
        double scale = 1.0;
        for (int i = 0; i < m; ++i) scale = std::max(scale, std::abs(b[i]));
        if (tab.zval < -1e-7 * scale) {
            sol.status = SolveStatus::Infeasible;
            sol.iterations = iterations;
            return sol;
        }
        // Drive basic artificials (at value 0) out of the basis when a real
        // pivot exists; otherwise the row is redundant and the artificial
        // stays, pinned at zero.
        for (int i = 0; i < m; ++i) {
            const int bc = tab.basis[i];
            if (tab.columns[bc].kind != Column::Kind::Artificial) continue;
            for (int j = 0; j < tab.ncols; ++j) {
                if (tab.columns[j].kind == Column::Kind::Artificial) continue;
                if (std::abs(tab.at(i, j)) > 1e-7) {
                    tab.pivot(i, j);
                    ++iterations;
                    break;
                }
            }
        }
        for (int j = 0; j < tab.ncols; ++j)
            if (tab.columns[j].kind == Column::Kind::Artificial) tab.dead[j] = 1;
    }

    // Phase 2 objective row rebuilt from scratch against the true costs.
    auto cost_of_column = [&](int j) -> double {
        const Column& c = tab.columns[j];
        if (c.kind == Column::Kind::Plus) return cost[c.ref];
        if (c.kind == Column::Kind::Minus) return -cost[c.ref];
        return 0.0;
    };
    for (int j = 0; j < tab.ncols; ++j) {
        double z = 0.0;
        for (int i = 0; i < m; ++i) {
            const double cb = cost_of_column(tab.basis[i]);
            if (cb != 0.0) z += cb * tab.at(i, j);
        }
        tab.zrow[j] = z - cost_of_column(j);
    }
    tab.zval = 0.0;
    for (int i = 0; i < m; ++i) {
        const double cb = cost_of_column(tab.basis[i]);
        if (cb != 0.0) tab.zval += cb * tab.rhs_of(i);
    }

    if (!run_simplex(tab, iterations, "phase 2")) {
        sol.status = SolveStatus::Unbounded;
        sol.iterations = iterations;
        return sol;
    }

    // Primal solution in original variables.
    std::vector<double> xcol(tab.ncols, 0.0);
    for (int i = 0; i < m; ++i) xcol[tab.basis[i]] = tab.rhs_of(i);
    sol.x.assign(nv, 0.0);
    for (int j = 0; j < nv; ++j) {
        sol.x[j] = xcol[plus_col[j]];
        if (minus_col[j] >= 0) sol.x[j] -= xcol[minus_col[j]];
    }

    // Duals from the reduced costs of each row's initial identity column
    // (slack for <=, artificial otherwise; both have zero phase-2 cost).
    sol.duals.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
        const int id = (sense[i] == ConstraintSense::LessEq) ? slack_col[i] : art_col[i];
        double y = tab.zrow[id];
        if (flipped[i]) y = -y;
        if (!lp.maximize) y = -y;
        sol.duals[i] = y;
    }

    // Objective in the caller's sense, recomputed from x rather than trusted
    // from the tableau.
    double primal = 0.0;
    for (int j = 0; j < nv; ++j) primal += lp.objective[j] * sol.x[j];
    sol.objective = primal;

    // Internal verification: x feasible, strong duality against original data.
    double max_violation = 0.0;
    for (int i = 0; i < m; ++i) {
        double lhs = 0.0;
        for (int j = 0; j < nv; ++j) lhs += lp.constraints[i][j] * sol.x[j];
        double v = 0.0;
        switch (lp.senses[i]) {
            case ConstraintSense::LessEq: v = lhs - lp.rhs[i]; break;
            case ConstraintSense::GreaterEq: v = lp.rhs[i] - lhs; break;
            case ConstraintSense::Equal: v = std::abs(lhs - lp.rhs[i]); break;
        }
        max_violation = std::max(max_violation, v);
    }
    double row_scale = 1.0;
    for (double bi : lp.rhs) row_scale = std::max(row_scale, std::abs(bi));
    if (max_violation > std::max(1e-6, kFeasTol * row_scale * 100))
        throw std::logic_error("simplex_solve: returned point violates constraints by " +
                               std::to_string(max_violation) + "\n" + tab.basis_dump());
    for (int j = 0; j < nv; ++j)
        if ((lp.bounds.empty() || lp.bounds[j] == VariableBound::NonNegative) &&
            sol.x[j] < -1e-7)
            throw std::logic_error("simplex_solve: variable x" + std::to_string(j) +
                                   " negative: " + std::to_string(sol.x[j]));

    double dual_obj = 0.0;
    for (int i = 0; i < m; ++i) dual_obj += sol.duals[i] * lp.rhs[i];
    sol.duality_gap = std::abs(primal - dual_obj);
    if (sol.duality_gap > 1e-7 * (1.0 + std::abs(primal)))
        throw std::logic_error("simplex_solve: strong duality violated, gap = " +
                               std::to_string(sol.duality_gap) + "\n" + tab.basis_dump());

    sol.status = SolveStatus::Optimal;
    sol.iterations = iterations;
    return sol;
}

} // namespace coarse
