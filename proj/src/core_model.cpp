#include "ndgen/core_model.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "ndgen/error.hpp"

namespace ndgen {

char familyCode(Family f)
{
    switch (f) {
    case Family::Demand: return 'D';
    case Family::ArcCapacity: return 'A';
    case Family::ComCapacity: return 'B';
    case Family::FixedCost: return 'F';
    case Family::VarCost: return 'C';
    }
    return '?';
}

std::optional<Family> familyFromCode(char c)
{
    for (Family f : kAllFamilies)
        if (familyCode(f) == c)
            return f;
    return std::nullopt;
}

std::string familyName(Family f)
{
    switch (f) {
    case Family::Demand: return "demand";
    case Family::ArcCapacity: return "arc capacity";
    case Family::ComCapacity: return "commodity capacity";
    case Family::FixedCost: return "fixed cost";
    case Family::VarCost: return "variable cost";
    }
    return "unknown";
}

RandomizationSelection::RandomizationSelection(unsigned mask, std::size_t arcCount, std::size_t commodityCount)
    : mask_(mask)
{
    if (mask & ~31u)
        throw ConfigError("randomization mask " + std::to_string(mask) + " has bits outside 1..16");

    variables_.reserve(countFor(mask, arcCount, commodityCount));
    if (has(Family::Demand))
        for (CommodityId k = 0; k < commodityCount; ++k)
            variables_.push_back({Family::Demand, 0, k});
    if (has(Family::ArcCapacity))
        for (ArcId a = 0; a < arcCount; ++a)
            variables_.push_back({Family::ArcCapacity, a, 0});
    if (has(Family::ComCapacity))
        for (ArcId a = 0; a < arcCount; ++a)
            for (CommodityId k = 0; k < commodityCount; ++k)
                variables_.push_back({Family::ComCapacity, a, k});
    if (has(Family::FixedCost))
        for (ArcId a = 0; a < arcCount; ++a)
            variables_.push_back({Family::FixedCost, a, 0});
    if (has(Family::VarCost))
        for (ArcId a = 0; a < arcCount; ++a)
            for (CommodityId k = 0; k < commodityCount; ++k)
                variables_.push_back({Family::VarCost, a, k});
}

std::size_t RandomizationSelection::countFor(unsigned mask, std::size_t arcCount, std::size_t commodityCount)
{
    auto on = [mask](Family f) { return (mask & static_cast<unsigned>(f)) ? std::size_t{1} : std::size_t{0}; };
    return on(Family::Demand) * commodityCount + on(Family::ArcCapacity) * arcCount +
           on(Family::ComCapacity) * arcCount * commodityCount + on(Family::FixedCost) * arcCount +
           on(Family::VarCost) * arcCount * commodityCount;
}

void checkProbabilities(const Eigen::VectorXd& probs, double tol)
{
    if (probs.size() == 0)
        throw ConfigError("probability vector is empty");
    for (Eigen::Index t = 0; t < probs.size(); ++t)
        if (!(probs[t] > 0.0))
            throw ConfigError("probability of scenario " + std::to_string(t + 1) + " is not positive");
    const double sum = probs.sum();
    if (std::abs(sum - 1.0) > tol)
        throw ConfigError("probabilities sum to " + std::to_string(sum) + ", not 1");
}

ScenarioMatrix::ScenarioMatrix(Eigen::MatrixXd values, Eigen::VectorXd probabilities)
    : values_(std::move(values)), probs_(std::move(probabilities))
{
    if (values_.rows() < 1 || values_.cols() < 1)
        throw ShapeError("scenario matrix needs at least one variable and one scenario");
    if (probs_.size() != values_.cols())
        throw ShapeError("probability vector length " + std::to_string(probs_.size()) + " does not match " +
                         std::to_string(values_.cols()) + " scenarios");
    checkProbabilities(probs_);
}

ScenarioMatrix::ScenarioMatrix(Eigen::MatrixXd values)
    : ScenarioMatrix(values, Eigen::VectorXd::Constant(values.cols(), values.cols() ? 1.0 / values.cols() : 0.0))
{
}

std::vector<double> node_balance(const DetInstance& instance, CommodityId commodity, std::optional<double> demandOverride)
{
    if (commodity >= instance.commodityCount())
        throw IndexError("commodity index " + std::to_string(commodity) + " out of range [0, " +
                         std::to_string(instance.commodityCount()) + ")");
    const Commodity& com = instance.commodities[commodity];
    const double d = demandOverride.value_or(com.demand);
    std::vector<double> w(instance.nodeCount(), 0.0);
    w.at(com.origin) = d;
    w.at(com.destination) = -d;
    return w;
}

std::vector<std::string> validate(const DetInstance& inst, const ValidationOptions& opts)
{
    std::vector<std::string> out;
    const std::size_t n = inst.nodeCount();
    const std::size_t A = inst.arcCount();
    const std::size_t K = inst.commodityCount();

    if (n == 0)
        out.push_back("graph has no nodes");

    std::set<std::pair<NodeId, NodeId>> seen;
    for (ArcId a = 0; a < A; ++a) {
        const Arc& arc = inst.graph.arcs[a];
        if (arc.tail >= n || arc.head >= n)
            out.push_back("arc " + std::to_string(a) + " has a node index outside [0, " + std::to_string(n) + ")");
        if (arc.tail == arc.head)
            out.push_back("self-loop at arc " + std::to_string(a));
        if (opts.noParallel && !seen.insert({arc.tail, arc.head}).second)
            out.push_back("parallel arc " + std::to_string(a));
    }

    for (CommodityId k = 0; k < K; ++k) {
        const Commodity& c = inst.commodities[k];
        if (c.origin >= n || c.destination >= n)
            out.push_back("commodity " + std::to_string(k) + " has a node index outside [0, " + std::to_string(n) + ")");
        if (c.origin == c.destination)
            out.push_back("commodity " + std::to_string(k) + " has origin equal to destination");
        if (!(c.demand >= 0.0))
            out.push_back("negative demand for commodity " + std::to_string(k));
    }

    auto checkSize = [&](const std::vector<double>& v, std::size_t expected, const char* name) {
        if (v.size() != expected) {
            out.push_back(std::string(name) + " has " + std::to_string(v.size()) + " entries, expected " +
                          std::to_string(expected));
            return false;
        }
        return true;
    };
    auto isInteger = [](double x) { return std::floor(x) == x; };

    if (checkSize(inst.fixedCost, A, "fixed cost array"))
        for (ArcId a = 0; a < A; ++a)
            if (!(inst.fixedCost[a] >= 0.0))
                out.push_back("negative fixed cost on arc " + std::to_string(a));
    if (checkSize(inst.capacity, A, "capacity array"))
        for (ArcId a = 0; a < A; ++a) {
            if (!(inst.capacity[a] >= 0.0))
                out.push_back("negative capacity on arc " + std::to_string(a));
            else if (opts.capInteger && !isInteger(inst.capacity[a]))
                out.push_back("non-integer capacity on arc " + std::to_string(a));
        }
    if (checkSize(inst.varCost, A * K, "variable cost array"))
        for (std::size_t i = 0; i < inst.varCost.size(); ++i)
            if (!(inst.varCost[i] >= 0.0))
                out.push_back("negative variable cost on arc " + std::to_string(i / K) + " commodity " +
                              std::to_string(i % K));
    if (checkSize(inst.comCapacity, inst.useComCapacity ? A * K : 0, "commodity capacity array"))
        for (std::size_t i = 0; i < inst.comCapacity.size(); ++i) {
            if (!(inst.comCapacity[i] >= 0.0))
                out.push_back("negative commodity capacity on arc " + std::to_string(i / K) + " commodity " +
                              std::to_string(i % K));
            else if (opts.bndInteger && !isInteger(inst.comCapacity[i]))
                out.push_back("non-integer commodity capacity on arc " + std::to_string(i / K) + " commodity " +
                              std::to_string(i % K));
        }
    return out;
}

double total_volume(const DetInstance& instance)
{
    double sum = 0.0;
    for (const Commodity& c : instance.commodities)
        sum += c.demand;
    return sum;
}

namespace {

void requireComCapacity(const DetInstance& inst, const RandomizationSelection& sel)
{
    if (sel.has(Family::ComCapacity) && !inst.useComCapacity)
        throw ConfigError("commodity capacities selected for randomization but the instance has none");
}

void requireShape(const DetInstance& inst, const RandomizationSelection& sel)
{
    const std::size_t expected = RandomizationSelection::countFor(sel.mask(), inst.arcCount(), inst.commodityCount());
    if (sel.size() != expected)
        throw ShapeError("selection was built for a different instance shape");
}

} // namespace

std::vector<double> flatten(const DetInstance& inst, const RandomizationSelection& sel)
{
    requireComCapacity(inst, sel);
    requireShape(inst, sel);
    std::vector<double> out;
    out.reserve(sel.size());
    for (const VariableRef& v : sel.variables()) {
        switch (v.family) {
        case Family::Demand: out.push_back(inst.commodities[v.commodity].demand); break;
        case Family::ArcCapacity: out.push_back(inst.capacity[v.arc]); break;
        case Family::ComCapacity: out.push_back(inst.comCapacityAt(v.arc, v.commodity)); break;
        case Family::FixedCost: out.push_back(inst.fixedCost[v.arc]); break;
        case Family::VarCost: out.push_back(inst.varCostAt(v.arc, v.commodity)); break;
        }
    }
    return out;
}

DetInstance unflatten(const DetInstance& base, const RandomizationSelection& sel, const std::vector<double>& values)
{
    requireComCapacity(base, sel);
    requireShape(base, sel);
    if (values.size() != sel.size())
        throw ShapeError("scenario column has " + std::to_string(values.size()) + " values, selection has " +
                         std::to_string(sel.size()));
    DetInstance out = base;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const VariableRef& v = sel.variables()[i];
        switch (v.family) {
        case Family::Demand: out.commodities[v.commodity].demand = values[i]; break;
        case Family::ArcCapacity: out.capacity[v.arc] = values[i]; break;
        case Family::ComCapacity: out.comCapacity[out.pairIndex(v.arc, v.commodity)] = values[i]; break;
        case Family::FixedCost: out.fixedCost[v.arc] = values[i]; break;
        case Family::VarCost: out.varCost[out.pairIndex(v.arc, v.commodity)] = values[i]; break;
        }
    }
    return out;
}

} // namespace ndgen
