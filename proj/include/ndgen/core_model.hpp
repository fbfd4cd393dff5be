#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ndgen {

using NodeId = std::size_t;
using ArcId = std::size_t;
using CommodityId = std::size_t;

struct Arc {
    NodeId tail = 0;
    NodeId head = 0;

    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Directed multigraph. Arc index is the position in `arcs`.
struct Graph {
    std::size_t nodeCount = 0;
    std::vector<Arc> arcs;

    std::size_t arcCount() const noexcept { return arcs.size(); }

    friend bool operator==(const Graph&, const Graph&) = default;
};

struct Commodity {
    NodeId origin = 0;
    NodeId destination = 0;
    double demand = 0.0;

    friend bool operator==(const Commodity&, const Commodity&) = default;
};

/// A deterministic multicommodity capacitated fixed-charge network design instance.
///
/// Per-(arc, commodity) arrays are stored arc-major: entry `a * |K| + k`.
/// `comCapacity` is empty unless `useComCapacity` is set.
struct DetInstance {
    Graph graph;
    std::vector<Commodity> commodities;
    std::vector<double> fixedCost;
    std::vector<double> capacity;
    std::vector<double> varCost;
    std::vector<double> comCapacity;
    bool useComCapacity = false;

    std::size_t nodeCount() const noexcept { return graph.nodeCount; }
    std::size_t arcCount() const noexcept { return graph.arcs.size(); }
    std::size_t commodityCount() const noexcept { return commodities.size(); }

    std::size_t pairIndex(ArcId a, CommodityId k) const noexcept { return a * commodities.size() + k; }
    double varCostAt(ArcId a, CommodityId k) const { return varCost[pairIndex(a, k)]; }
    double comCapacityAt(ArcId a, CommodityId k) const { return comCapacity[pairIndex(a, k)]; }

    friend bool operator==(const DetInstance&, const DetInstance&) = default;
};

/// Parameter families that can vary across scenarios. Values double as bitmask flags.
enum class Family : unsigned {
    Demand = 1,
    ArcCapacity = 2,
    ComCapacity = 4,
    FixedCost = 8,
    VarCost = 16,
};

inline constexpr Family kAllFamilies[] = {Family::Demand, Family::ArcCapacity, Family::ComCapacity,
                                          Family::FixedCost, Family::VarCost};

/// One-letter code used by correlation block flags: D, A, B, F, C.
char familyCode(Family f);
std::optional<Family> familyFromCode(char c);
std::string familyName(Family f);

/// One randomized parameter. `commodity` is meaningful for Demand and the per-pair
/// families, `arc` for the per-arc and per-pair families.
struct VariableRef {
    Family family;
    ArcId arc = 0;
    CommodityId commodity = 0;

    friend bool operator==(const VariableRef&, const VariableRef&) = default;
};

/// Selected families plus the canonical flattening of their parameters:
/// demands by commodity, arc capacities by arc, commodity capacities by (arc, commodity),
/// fixed costs by arc, variable costs by (arc, commodity).
class RandomizationSelection {
public:
    RandomizationSelection() = default;
    RandomizationSelection(unsigned mask, std::size_t arcCount, std::size_t commodityCount);

    unsigned mask() const noexcept { return mask_; }
    bool has(Family f) const noexcept { return (mask_ & static_cast<unsigned>(f)) != 0; }
    std::size_t size() const noexcept { return variables_.size(); }
    bool empty() const noexcept { return variables_.empty(); }
    const std::vector<VariableRef>& variables() const noexcept { return variables_; }
    const VariableRef& operator[](std::size_t i) const { return variables_.at(i); }

    /// Expected variable count for the given shape without materializing the index.
    static std::size_t countFor(unsigned mask, std::size_t arcCount, std::size_t commodityCount);

private:
    unsigned mask_ = 0;
    std::vector<VariableRef> variables_;
};

/// Variables x scenarios value matrix with scenario probabilities.
class ScenarioMatrix {
public:
    ScenarioMatrix(Eigen::MatrixXd values, Eigen::VectorXd probabilities);

    /// Equiprobable scenarios.
    explicit ScenarioMatrix(Eigen::MatrixXd values);

    std::size_t variableCount() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    std::size_t scenarioCount() const noexcept { return static_cast<std::size_t>(values_.cols()); }
    const Eigen::MatrixXd& values() const noexcept { return values_; }
    const Eigen::VectorXd& probabilities() const noexcept { return probs_; }

private:
    Eigen::MatrixXd values_;
    Eigen::VectorXd probs_;
};

/// Throws ConfigError unless every probability is positive and they sum to 1 within `tol`.
void checkProbabilities(const Eigen::VectorXd& probs, double tol = 1e-12);

/// Net outgoing flow of `commodity` at every node. `demandOverride` replaces the stored demand.
std::vector<double> node_balance(const DetInstance& instance, CommodityId commodity,
                                 std::optional<double> demandOverride = std::nullopt);

struct ValidationOptions {
    bool noParallel = false;
    bool capInteger = false;
    bool bndInteger = false;
};

/// Every invariant violation found in `instance`. Empty means valid.
std::vector<std::string> validate(const DetInstance& instance, const ValidationOptions& opts = {});

double total_volume(const DetInstance& instance);

/// Base values of the selected parameters in canonical order.
std::vector<double> flatten(const DetInstance& instance, const RandomizationSelection& selection);

/// Copy of `base` with the selected parameters overwritten from `values` (canonical order).
DetInstance unflatten(const DetInstance& base, const RandomizationSelection& selection,
                      const std::vector<double>& values);

} // namespace ndgen
