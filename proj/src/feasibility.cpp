#include "ndgen/feasibility.hpp"

#include <algorithm>

#include "ndgen/error.hpp"

namespace ndgen {

DetInstance scenario_instance(const DetInstance& base, const RandomizationSelection& selection,
                              const std::vector<double>& column)
{
    return unflatten(base, selection, column);
}

FeasibilityLayout feasibility_layout(const DetInstance& instance)
{
    return {instance.nodeCount(), instance.arcCount(), instance.commodityCount()};
}

LpProblem build_feasibility_lp(const DetInstance& inst)
{
    const FeasibilityLayout L = feasibility_layout(inst);
    const std::size_t N = L.nodeCount, A = L.arcCount, K = L.commodityCount;

    LpProblem lp;
    lp.volume = total_volume(inst);
    for (std::size_t a = 0; a < A; ++a)
        for (std::size_t k = 0; k < K; ++k)
            lp.addVariable(0.0, 0.0, inst.useComCapacity ? inst.comCapacityAt(a, k) : kInfinity);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t i = 0; i < N; ++i) {
            lp.addVariable(1.0);
            lp.addVariable(1.0);
        }

    lp.rows.resize(N * K + A);
    for (std::size_t k = 0; k < K; ++k) {
        const std::vector<double> w = node_balance(inst, k);
        for (std::size_t i = 0; i < N; ++i) {
            LpRow& row = lp.rows[L.conservationRow(i, k)];
            row.sense = RowSense::Equal;
            row.rhs = w[i];
            row.index = {L.slackPlus(i, k), L.slackMinus(i, k)};
            row.value = {1.0, -1.0};
        }
    }
    for (std::size_t a = 0; a < A; ++a) {
        const Arc& arc = inst.graph.arcs[a];
        LpRow& bundle = lp.rows[L.bundleRow(a)];
        bundle.sense = RowSense::LessEqual;
        bundle.rhs = inst.capacity[a];
        for (std::size_t k = 0; k < K; ++k) {
            const std::size_t x = L.flow(a, k);
            LpRow& out = lp.rows[L.conservationRow(arc.tail, k)];
            out.index.push_back(x);
            out.value.push_back(1.0);
            LpRow& in = lp.rows[L.conservationRow(arc.head, k)];
            in.index.push_back(x);
            in.value.push_back(-1.0);
            bundle.index.push_back(x);
            bundle.value.push_back(1.0);
        }
    }
    return lp;
}

FeasibilityCheck check_feasible(const LpProblem& lp, const SimplexOptions& opts)
{
    const LpSolution sol = solve_lp(lp, opts);
    if (sol.status == LpStatus::Infeasible)
        return {false, kInfinity};
    if (sol.status == LpStatus::Unbounded)
        throw Error("phase-1 LP reported unbounded; its objective is a sum of nonnegative slacks");
    const double objective = std::max(sol.objective, 0.0);
    return {objective <= kFeasibilityTol * std::max(1.0, lp.volume), objective};
}

FilterResult filter(const DetInstance& base, const RandomizationSelection& selection, const ScenarioMatrix& scenarios,
                    const SimplexOptions& opts)
{
    if (scenarios.variableCount() != selection.size())
        throw ShapeError("scenario matrix has " + std::to_string(scenarios.variableCount()) +
                         " rows, selection has " + std::to_string(selection.size()));

    const Eigen::MatrixXd& values = scenarios.values();
    FeasibilityReport report;
    std::vector<Eigen::Index> keep;
    std::vector<double> column(selection.size());

    for (Eigen::Index t = 0; t < values.cols(); ++t) {
        for (std::size_t i = 0; i < column.size(); ++i)
            column[i] = values(static_cast<Eigen::Index>(i), t);
        ScenarioVerdict verdict{static_cast<std::size_t>(t), false, kInfinity};
        const bool physical = std::all_of(column.begin(), column.end(), [](double v) { return v >= 0.0; });
        if (physical) {
            const FeasibilityCheck check = check_feasible(build_feasibility_lp(scenario_instance(base, selection, column)), opts);
            verdict.feasible = check.feasible;
            verdict.objective = check.objective;
        }
        ++report.testedCount;
        if (verdict.feasible)
            keep.push_back(t);
        else
            ++report.rejectedCount;
        report.perScenario.push_back(verdict);
    }

    if (keep.empty())
        throw Error("all " + std::to_string(report.testedCount) + " scenarios were rejected as infeasible");

    Eigen::MatrixXd kept(values.rows(), static_cast<Eigen::Index>(keep.size()));
    Eigen::VectorXd probs(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
        kept.col(static_cast<Eigen::Index>(c)) = values.col(keep[c]);
        probs[static_cast<Eigen::Index>(c)] = scenarios.probabilities()[keep[c]];
    }
    if (keep.size() != static_cast<std::size_t>(values.cols()))
        probs /= probs.sum();
    else
        probs = scenarios.probabilities();
    return {ScenarioMatrix(std::move(kept), std::move(probs)), std::move(report)};
}

} // namespace ndgen
