#pragma once

#include <cstddef>
#include <vector>

#include "ndgen/core_model.hpp"
#include "ndgen/simplex.hpp"

namespace ndgen {

/// Copy of `base` with the selected parameters replaced by one scenario column.
DetInstance scenario_instance(const DetInstance& base, const RandomizationSelection& selection,
                              const std::vector<double>& column);

/// Layout of the phase-1 LP built by build_feasibility_lp.
///
/// Variables: flows x[a][k] at `a * |K| + k`, then s+ and s- for every (node, commodity)
/// pair at `flowCount + 2 * (k * |N| + i)` and `+ 1`. Rows: conservation rows at
/// `k * |N| + i`, then one bundle row per arc.
struct FeasibilityLayout {
    std::size_t nodeCount = 0;
    std::size_t arcCount = 0;
    std::size_t commodityCount = 0;

    std::size_t flowCount() const noexcept { return arcCount * commodityCount; }
    std::size_t flow(std::size_t arc, std::size_t commodity) const noexcept { return arc * commodityCount + commodity; }
    std::size_t slackPlus(std::size_t node, std::size_t commodity) const noexcept
    {
        return flowCount() + 2 * (commodity * nodeCount + node);
    }
    std::size_t slackMinus(std::size_t node, std::size_t commodity) const noexcept
    {
        return slackPlus(node, commodity) + 1;
    }
    std::size_t conservationRow(std::size_t node, std::size_t commodity) const noexcept
    {
        return commodity * nodeCount + node;
    }
    std::size_t bundleRow(std::size_t arc) const noexcept { return nodeCount * commodityCount + arc; }
};

FeasibilityLayout feasibility_layout(const DetInstance& instance);

/// Phase-1 LP of the second stage with every arc open: conservation rows with a +s+ - s-
/// slack pair, bundle rows sum_k x <= u, commodity capacities as flow upper bounds, and
/// objective sum of slacks.
LpProblem build_feasibility_lp(const DetInstance& instance);

struct FeasibilityCheck {
    bool feasible = false;
    /// Optimal phase-1 objective; +infinity if even the relaxed LP has no solution.
    double objective = kInfinity;
};

/// Relative zero test for the phase-1 objective: objective <= kFeasibilityTol * max(1, volume).
inline constexpr double kFeasibilityTol = 1e-6;

FeasibilityCheck check_feasible(const LpProblem& lp, const SimplexOptions& opts = {});

struct ScenarioVerdict {
    std::size_t scenario = 0;
    bool feasible = false;
    double objective = 0.0;
};

struct FeasibilityReport {
    std::size_t testedCount = 0;
    std::size_t rejectedCount = 0;
    std::vector<ScenarioVerdict> perScenario;

    std::size_t retainedCount() const noexcept { return testedCount - rejectedCount; }
};

struct FilterResult {
    ScenarioMatrix retained;
    FeasibilityReport report;
};

/// Screens every scenario column. Scenarios with a negative realized parameter are rejected
/// without solving. Retained columns keep their order; probabilities are rescaled to sum to 1.
/// Throws Error when no scenario survives.
FilterResult filter(const DetInstance& base, const RandomizationSelection& selection, const ScenarioMatrix& scenarios,
                    const SimplexOptions& opts = {});

} // namespace ndgen
