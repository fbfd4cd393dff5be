#include "ndgen/detgen.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "ndgen/error.hpp"

namespace ndgen {

std::size_t GenConfig::effectiveNodeCount(const Graph* graphIn) const
{
    switch (topology) {
    case Topology::Grid: return gridX * gridY;
    case Topology::File: return graphIn ? graphIn->nodeCount : nodeCount;
    default: return nodeCount;
    }
}

void GenConfig::validate() const
{
    auto range = [](double lo, double hi, const char* name) {
        if (!(lo <= hi))
            throw ConfigError(std::string(name) + ": minimum exceeds maximum");
        if (!(lo >= 0.0))
            throw ConfigError(std::string(name) + ": minimum must be nonnegative");
    };
    auto ratio = [](double r, const char* name) {
        if (!(r >= 0.0 && r <= 1.0))
            throw ConfigError(std::string(name) + " must lie in [0, 1]");
    };

    if (topology == Topology::Grid && (gridX < 1 || gridY < 1))
        throw ConfigError("grid dimensions must be positive");
    if (topology == Topology::Circular && nodeCount < 3)
        throw ConfigError("circular topology needs at least 3 nodes");
    if (topology != Topology::Grid && topology != Topology::File && nodeCount < 1)
        throw ConfigError("node count must be positive");
    if (commodityCount < 1)
        throw ConfigError("commodity count must be positive");
    if (srcMin < 1 || snkMin < 1 || srcMin > srcMax || snkMin > snkMax)
        throw ConfigError("source/sink counts need 1 <= min <= max");

    range(demMin, demMax, "demand range");
    range(fixMin, fixMax, "fixed cost range");
    range(varMin, varMax, "variable cost range");
    range(capMin, capMax, "capacity range");
    range(bndMin, bndMax, "commodity capacity range");

    ratio(ratioZeroFix, "zero fixed cost ratio");
    ratio(ratioFullCap, "full capacity ratio");
    ratio(ratioZeroBnd, "zero commodity capacity ratio");
    ratio(ratioMaxBnd, "maximal commodity capacity ratio");

    if (!(fixMultiplier >= 1.0))
        throw ConfigError("fixed cost multiplier must be >= 1");
    if (!(capMultiplier > 0.0 && capMultiplier <= 1.0))
        throw ConfigError("capacity multiplier must lie in (0, 1]");
}

double round_half_up(double x) { return std::floor(x + 0.5); }

std::size_t base_arc_count(const GenConfig& config, const Graph* graphIn)
{
    switch (config.topology) {
    case Topology::Grid: return 2 * (config.gridX * (config.gridY - 1) + config.gridY * (config.gridX - 1));
    case Topology::Circular: return 2 * config.nodeCount;
    case Topology::File: return graphIn ? graphIn->arcCount() : 0;
    case Topology::Random: return 0;
    }
    return 0;
}

Graph build_topology(const GenConfig& config, Pcg32& rng, const std::optional<Graph>& graphIn)
{
    if ((config.topology == Topology::File) != graphIn.has_value())
        throw ConfigError(config.topology == Topology::File ? "file topology requires an input graph"
                                                            : "input graph given but topology is not 'file'");
    Graph g;
    switch (config.topology) {
    case Topology::Grid: {
        const std::size_t nx = config.gridX, ny = config.gridY;
        g.nodeCount = nx * ny;
        for (std::size_t y = 0; y < ny; ++y)
            for (std::size_t x = 0; x < nx; ++x) {
                const NodeId v = y * nx + x;
                if (x + 1 < nx) {
                    g.arcs.push_back({v, v + 1});
                    g.arcs.push_back({v + 1, v});
                }
                if (y + 1 < ny) {
                    g.arcs.push_back({v, v + nx});
                    g.arcs.push_back({v + nx, v});
                }
            }
        break;
    }
    case Topology::Circular: {
        const std::size_t n = config.nodeCount;
        g.nodeCount = n;
        for (NodeId i = 0; i < n; ++i) {
            const NodeId j = (i + 1) % n;
            g.arcs.push_back({i, j});
            g.arcs.push_back({j, i});
        }
        break;
    }
    case Topology::Random:
        if (config.extraRandomArcs == 0)
            throw ConfigError("random topology with no random arcs yields an empty graph");
        g.nodeCount = config.nodeCount;
        break;
    case Topology::File:
        g = *graphIn;
        break;
    }

    const std::size_t n = g.nodeCount;
    if (config.extraRandomArcs == 0)
        return g;
    if (n < 2)
        throw ConfigError("random arcs need at least 2 nodes");

    std::set<std::pair<NodeId, NodeId>> used;
    if (!config.allowParallel) {
        for (const Arc& a : g.arcs)
            if (!used.insert({a.tail, a.head}).second)
                throw ConfigError("base graph already contains parallel arcs but parallel arcs are precluded");
        if (g.arcs.size() + config.extraRandomArcs > n * (n - 1))
            throw ConfigError("cannot place " + std::to_string(config.extraRandomArcs) +
                              " random arcs without parallels: graph saturated at " + std::to_string(n * (n - 1)) +
                              " arcs");
    }

    const std::size_t budget = kArcRetryFactor * config.extraRandomArcs;
    std::size_t added = 0, attempts = 0;
    const auto last = static_cast<std::int64_t>(n - 1);
    while (added < config.extraRandomArcs) {
        if (attempts++ >= budget)
            throw ConfigError("random arc placement exhausted its retry budget of " + std::to_string(budget) +
                              " draws (graph saturated)");
        const auto tail = static_cast<NodeId>(uniform_int(rng, 0, last));
        const auto head = static_cast<NodeId>(uniform_int(rng, 0, last));
        if (tail == head)
            continue;
        if (!config.allowParallel && !used.insert({tail, head}).second)
            continue;
        g.arcs.push_back({tail, head});
        ++added;
    }
    return g;
}

namespace {

/// First `count` entries of a uniform random permutation of `pool` (partial Fisher-Yates).
template <typename T>
std::vector<T> sample_without_replacement(std::vector<T> pool, std::size_t count, Pcg32& rng)
{
    for (std::size_t i = 0; i < count; ++i) {
        const auto j = static_cast<std::size_t>(
            uniform_int(rng, static_cast<std::int64_t>(i), static_cast<std::int64_t>(pool.size() - 1)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

std::pair<NodeId, NodeId> draw_od_pair(std::size_t n, Pcg32& rng)
{
    const auto o = static_cast<NodeId>(uniform_int(rng, 0, static_cast<std::int64_t>(n - 1)));
    auto d = static_cast<NodeId>(uniform_int(rng, 0, static_cast<std::int64_t>(n - 2)));
    if (d >= o)
        ++d;
    return {o, d};
}

} // namespace

std::vector<Commodity> place_commodities(const Graph& graph, const GenConfig& config, Pcg32& rng)
{
    const std::size_t n = graph.nodeCount;
    if (n < 2)
        throw ConfigError("commodities need at least 2 nodes");

    std::vector<Commodity> out;
    switch (config.odMode) {
    case OdMode::Single:
        for (std::size_t k = 0; k < config.commodityCount; ++k) {
            const auto [o, d] = draw_od_pair(n, rng);
            out.push_back({o, d, uniform_real(rng, config.demMin, config.demMax)});
        }
        break;
    case OdMode::Shared: {
        const auto [o, d] = draw_od_pair(n, rng);
        for (std::size_t k = 0; k < config.commodityCount; ++k)
            out.push_back({o, d, uniform_real(rng, config.demMin, config.demMax)});
        break;
    }
    case OdMode::Random: {
        if (config.srcMax + config.snkMax > n)
            throw ConfigError("srcMax + snkMax exceeds the node count");
        std::vector<NodeId> nodes(n);
        std::iota(nodes.begin(), nodes.end(), NodeId{0});
        for (std::size_t k = 0; k < config.commodityCount; ++k) {
            const auto nS = static_cast<std::size_t>(uniform_int(rng, static_cast<std::int64_t>(config.srcMin),
                                                                 static_cast<std::int64_t>(config.srcMax)));
            const auto nT = static_cast<std::size_t>(uniform_int(rng, static_cast<std::int64_t>(config.snkMin),
                                                                 static_cast<std::int64_t>(config.snkMax)));
            const std::vector<NodeId> picked = sample_without_replacement(nodes, nS + nT, rng);
            const double total = uniform_real(rng, config.demMin, config.demMax);
            const double share = total / static_cast<double>(nS * nT);
            for (std::size_t s = 0; s < nS; ++s)
                for (std::size_t t = 0; t < nT; ++t)
                    out.push_back({picked[s], picked[nS + t], share});
        }
        break;
    }
    }
    return out;
}

DetInstance sample_arc_parameters(const Graph& graph, std::vector<Commodity> commodities, const GenConfig& config,
                                  Pcg32& rng)
{
    DetInstance inst;
    inst.graph = graph;
    inst.commodities = std::move(commodities);
    inst.useComCapacity = config.useComCapacity;

    const std::size_t A = graph.arcCount();
    const std::size_t K = inst.commodities.size();

    inst.fixedCost.resize(A);
    for (double& f : inst.fixedCost)
        f = uniform_real(rng, config.fixMin, config.fixMax);

    inst.capacity.resize(A);
    for (double& u : inst.capacity) {
        u = uniform_real(rng, config.capMin, config.capMax);
        if (config.capInteger)
            u = round_half_up(u);
    }

    inst.varCost.resize(A * K);
    for (double& c : inst.varCost)
        c = uniform_real(rng, config.varMin, config.varMax);

    if (config.useComCapacity) {
        inst.comCapacity.resize(A * K);
        for (double& b : inst.comCapacity) {
            b = uniform_real(rng, config.bndMin, config.bndMax);
            if (config.bndInteger)
                b = round_half_up(b);
        }
    }
    return inst;
}

DetInstance tune_random_arcs(DetInstance inst, const GenConfig& config, Pcg32& rng, std::size_t firstTunableArc,
                             std::vector<std::string>* warnings)
{
    const std::size_t A = inst.arcCount();
    const std::size_t K = inst.commodityCount();
    std::vector<ArcId> eligible;
    for (ArcId a = std::min(firstTunableArc, A); a < A; ++a)
        eligible.push_back(a);

    auto pick = [&](double ratio) {
        const auto count = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(eligible.size())));
        return sample_without_replacement(eligible, count, rng);
    };
    auto warn = [&](const std::string& msg) {
        if (warnings)
            warnings->push_back(msg);
    };

    for (ArcId a : pick(config.ratioZeroFix))
        inst.fixedCost[a] = 0.0;

    if (config.ratioFullCap > 0.0) {
        double volume = total_volume(inst);
        if (config.capInteger)
            volume = round_half_up(volume);
        for (ArcId a : pick(config.ratioFullCap))
            inst.capacity[a] = volume;
    }

    const bool bPasses = config.ratioZeroBnd > 0.0 || config.ratioMaxBnd > 0.0;
    if (bPasses && !inst.useComCapacity) {
        warn("commodity-capacity tuning ratios ignored: commodity capacities are disabled");
        return inst;
    }
    if (config.ratioZeroBnd > 0.0)
        for (ArcId a : pick(config.ratioZeroBnd))
            for (CommodityId k = 0; k < K; ++k)
                inst.comCapacity[inst.pairIndex(a, k)] = 0.0;
    if (config.ratioMaxBnd > 0.0)
        for (ArcId a : pick(config.ratioMaxBnd))
            for (CommodityId k = 0; k < K; ++k)
                inst.comCapacity[inst.pairIndex(a, k)] =
                    config.bndInteger ? round_half_up(inst.capacity[a]) : inst.capacity[a];
    return inst;
}

DetInstance tune_design_flow(DetInstance inst, const GenConfig& config)
{
    if (!(config.fixMultiplier >= 1.0))
        throw ConfigError("fixed cost multiplier must be >= 1");
    if (!(config.capMultiplier > 0.0 && config.capMultiplier <= 1.0))
        throw ConfigError("capacity multiplier must lie in (0, 1]");
    for (double& f : inst.fixedCost)
        f *= config.fixMultiplier;
    for (double& u : inst.capacity) {
        u *= config.capMultiplier;
        if (config.capInteger)
            u = round_half_up(u);
    }
    return inst;
}

DetInstance generate(const GenConfig& config, Pcg32& rng, const std::optional<Graph>& graphIn,
                     std::vector<std::string>* warnings)
{
    config.validate();
    Graph graph = build_topology(config, rng, graphIn);
    std::vector<Commodity> commodities = place_commodities(graph, config, rng);
    DetInstance inst = sample_arc_parameters(graph, std::move(commodities), config, rng);
    const std::size_t firstTunable = config.tuneExtrasOnly ? base_arc_count(config, graphIn ? &*graphIn : nullptr) : 0;
    inst = tune_random_arcs(std::move(inst), config, rng, firstTunable, warnings);
    inst = tune_design_flow(std::move(inst), config);
    return inst;
}

} // namespace ndgen
