#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ndgen/core_model.hpp"
#include "ndgen/prng.hpp"

namespace ndgen {

enum class Topology { Random, Grid, Circular, File };
enum class OdMode { Single, Shared, Random };

/// Options of the deterministic generator. Defaults are the ones the CLI reports with -help.
struct GenConfig {
    Topology topology = Topology::Random;
    std::size_t gridX = 3;
    std::size_t gridY = 3;
    std::size_t nodeCount = 10;
    std::size_t commodityCount = 10;
    std::size_t extraRandomArcs = 30;
    bool allowParallel = false;

    std::size_t srcMin = 1, srcMax = 1, snkMin = 1, snkMax = 1;
    OdMode odMode = OdMode::Single;

    double demMin = 5.0, demMax = 25.0;
    double fixMin = 50.0, fixMax = 150.0;
    double varMin = 1.0, varMax = 10.0;
    double capMin = 50.0, capMax = 150.0;
    double bndMin = 10.0, bndMax = 50.0;
    bool capInteger = false;
    bool bndInteger = false;
    bool useComCapacity = false;

    double ratioZeroFix = 0.0;
    double ratioFullCap = 0.0;
    double ratioZeroBnd = 0.0;
    double ratioMaxBnd = 0.0;
    bool tuneExtrasOnly = false;

    double fixMultiplier = 1.0;
    double capMultiplier = 1.0;

    /// Node count implied by the topology (gridX * gridY for grids).
    std::size_t effectiveNodeCount(const Graph* graphIn = nullptr) const;

    /// Throws ConfigError on the first violated range or ratio constraint.
    void validate() const;
};

/// Duplicate-rejection budget for random arcs is this factor times the requested count.
inline constexpr std::size_t kArcRetryFactor = 100;

/// Round half up: floor(x + 0.5).
double round_half_up(double x);

/// Number of arcs contributed by the base topology before random extras.
std::size_t base_arc_count(const GenConfig& config, const Graph* graphIn = nullptr);

Graph build_topology(const GenConfig& config, Pcg32& rng, const std::optional<Graph>& graphIn = std::nullopt);

std::vector<Commodity> place_commodities(const Graph& graph, const GenConfig& config, Pcg32& rng);

/// Draw order: f for every arc, then u for every arc, then c arc-major, then b arc-major.
DetInstance sample_arc_parameters(const Graph& graph, std::vector<Commodity> commodities, const GenConfig& config,
                                  Pcg32& rng);

/// Applies the four ratio passes (zero fixed cost, full capacity, zero commodity capacity,
/// maximal commodity capacity) in that order. Arcs with index below `firstTunableArc` are
/// never selected. Warnings (e.g. skipped commodity-capacity passes) go to `warnings`.
DetInstance tune_random_arcs(DetInstance instance, const GenConfig& config, Pcg32& rng, std::size_t firstTunableArc = 0,
                             std::vector<std::string>* warnings = nullptr);

DetInstance tune_design_flow(DetInstance instance, const GenConfig& config);

DetInstance generate(const GenConfig& config, Pcg32& rng, const std::optional<Graph>& graphIn = std::nullopt,
                     std::vector<std::string>* warnings = nullptr);

} // namespace ndgen
