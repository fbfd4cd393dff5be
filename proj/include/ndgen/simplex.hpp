#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace ndgen {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { LessEqual, Equal };

struct LpRow {
    std::vector<std::size_t> index;
    std::vector<double> value;
    RowSense sense = RowSense::Equal;
    double rhs = 0.0;
};

/// Minimize objective . x subject to row-sparse constraints and lower <= x <= upper.
/// Lower bounds must be finite; upper bounds may be kInfinity.
struct LpProblem {
    std::size_t variableCount = 0;
    std::vector<double> objective;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<LpRow> rows;
    /// Magnitude used to scale the zero test of a phase-1 objective (total demand volume).
    double volume = 0.0;

    std::size_t rowCount() const noexcept { return rows.size(); }

    /// Appends a variable and returns its index.
    std::size_t addVariable(double cost, double lo = 0.0, double hi = kInfinity);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective = kInfinity;
    /// Optimal point; the last feasible basic point when unbounded; empty when infeasible.
    std::vector<double> x;
    std::size_t iterations = 0;
};

struct SimplexOptions {
    std::size_t maxIterations = 1'000'000;
    std::size_t refactorInterval = 50;
    /// Consecutive degenerate pivots before switching to Bland's rule.
    std::size_t blandAfter = 1000;
    double primalTol = 1e-9;
    double dualTol = 1e-9;
    double pivotTol = 1e-9;
};

/// Bounded-variable revised simplex (two phases: artificial feasibility, then objective).
/// Throws SolverStall when the pivot limit is reached.
LpSolution solve_lp(const LpProblem& lp, const SimplexOptions& opts = {});

} // namespace ndgen
