#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "ndgen/detgen.hpp"
#include "ndgen/error.hpp"
#include "oracles.hpp"

using namespace ndgen;

namespace {

std::size_t count_pairs(const Graph& g) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const Arc& a : g.arcs)
        seen.insert({a.tail, a.head});
    return seen.size();
}

} // namespace

TEST_CASE("grid topology") {
    GenConfig c;
    c.topology = Topology::Grid;
    c.extraRandomArcs = 0;
    Pcg32 rng;
    const Graph g = build_topology(c, rng);
    CHECK(g.nodeCount == 9);
    CHECK(g.arcCount() == 24);
    CHECK(base_arc_count(c) == 24);
    // Every arc joins lattice neighbours, each direction once.
    for (const Arc& a : g.arcs) {
        const long dx = std::labs(static_cast<long>(a.tail % 3) - static_cast<long>(a.head % 3));
        const long dy = std::labs(static_cast<long>(a.tail / 3) - static_cast<long>(a.head / 3));
        CHECK(dx + dy == 1);
    }
    CHECK(count_pairs(g) == 24);

    c.gridX = 2;
    c.gridY = 2;
    c.extraRandomArcs = 4;
    c.allowParallel = true;
    CHECK(build_topology(c, rng).arcCount() == 12);

    c.gridX = 4;
    c.gridY = 1;
    c.extraRandomArcs = 0;
    CHECK(build_topology(c, rng).arcCount() == 6);
}

TEST_CASE("circular topology") {
    GenConfig c;
    c.topology = Topology::Circular;
    c.nodeCount = 5;
    c.extraRandomArcs = 0;
    Pcg32 rng;
    const Graph g = build_topology(c, rng);
    CHECK(g.nodeCount == 5);
    CHECK(g.arcCount() == 10);
    for (std::size_t i = 0; i < 5; ++i) {
        const std::size_t j = (i + 1) % 5;
        CHECK(std::count(g.arcs.begin(), g.arcs.end(), Arc{i, j}) == 1);
        CHECK(std::count(g.arcs.begin(), g.arcs.end(), Arc{j, i}) == 1);
    }
}

TEST_CASE("random topology and its errors") {
    GenConfig c;
    c.nodeCount = 6;
    c.extraRandomArcs = 30;
    Pcg32 rng(1, 1);
    const Graph g = build_topology(c, rng);
    CHECK(g.arcCount() == 30);
    CHECK(count_pairs(g) == 30);
    for (const Arc& a : g.arcs)
        CHECK(a.tail != a.head);

    c.extraRandomArcs = 0;
    CHECK_THROWS_AS(build_topology(c, rng), ConfigError);

    c.nodeCount = 3;
    c.extraRandomArcs = 7; // 3 * 2 = 6 distinct pairs
    CHECK_THROWS_AS(build_topology(c, rng), ConfigError);
    c.allowParallel = true;
    CHECK(build_topology(c, rng).arcCount() == 7);
}

TEST_CASE("file topology keeps the input graph and appends extras") {
    GenConfig c;
    c.topology = Topology::File;
    c.extraRandomArcs = 2;
    const Graph in{4, {{0, 1}, {1, 2}, {2, 3}}};
    Pcg32 rng;
    const Graph g = build_topology(c, rng, in);
    REQUIRE(g.arcCount() == 5);
    CHECK(std::equal(in.arcs.begin(), in.arcs.end(), g.arcs.begin()));
    CHECK(count_pairs(g) == 5);
    CHECK_THROWS_AS(build_topology(c, rng), ConfigError);
}

TEST_CASE("commodity placement modes") {
    GenConfig c;
    c.nodeCount = 10;
    c.commodityCount = 25;
    Pcg32 rng(2, 3);
    const Graph g = build_topology(c, rng);
    const auto single = place_commodities(g, c, rng);
    CHECK(single.size() == 25);
    for (const Commodity& k : single) {
        CHECK(k.origin != k.destination);
        CHECK(k.origin < 10);
        CHECK(k.destination < 10);
        CHECK(k.demand >= 5.0);
        CHECK(k.demand < 25.0);
    }

    c.odMode = OdMode::Shared;
    c.commodityCount = 3;
    const auto shared = place_commodities(g, c, rng);
    REQUIRE(shared.size() == 3);
    for (const Commodity& k : shared) {
        CHECK(k.origin == shared[0].origin);
        CHECK(k.destination == shared[0].destination);
    }

    c.odMode = OdMode::Random;
    c.commodityCount = 1;
    c.srcMin = c.srcMax = c.snkMin = c.snkMax = 2;
    c.demMin = c.demMax = 40.0;
    const auto split = place_commodities(g, c, rng);
    REQUIRE(split.size() == 4);
    std::set<std::size_t> sources, sinks;
    double total = 0.0;
    for (const Commodity& k : split) {
        CHECK(k.demand == 10.0);
        sources.insert(k.origin);
        sinks.insert(k.destination);
        total += k.demand;
    }
    CHECK(total == 40.0);
    CHECK(sources.size() == 2);
    CHECK(sinks.size() == 2);
    for (std::size_t s : sources)
        CHECK(sinks.count(s) == 0);

    c.srcMax = 6;
    c.snkMax = 5;
    CHECK_THROWS_AS(place_commodities(g, c, rng), ConfigError);
}

TEST_CASE("arc parameter sampling") {
    GenConfig c;
    c.nodeCount = 6;
    c.extraRandomArcs = 20;
    c.fixMin = c.fixMax = 100.0;
    c.capMin = 10.2;
    c.capMax = 10.4;
    c.capInteger = true;
    Pcg32 rng(4, 4);
    const Graph g = build_topology(c, rng);
    const auto ks = place_commodities(g, c, rng);
    const DetInstance inst = sample_arc_parameters(g, ks, c, rng);
    for (double f : inst.fixedCost)
        CHECK(f == 100.0);
    for (double u : inst.capacity)
        CHECK(u == 10.0);
    CHECK(inst.varCost.size() == g.arcCount() * ks.size());
    CHECK(inst.comCapacity.empty());

    GenConfig wide;
    wide.nodeCount = 2;
    wide.extraRandomArcs = 1;
    wide.commodityCount = 100'000;
    wide.varMin = 1.0;
    wide.varMax = 9.0;
    wide.allowParallel = true;
    Pcg32 r2(8, 8);
    const Graph g2 = build_topology(wide, r2);
    const DetInstance many = sample_arc_parameters(g2, place_commodities(g2, wide, r2), wide, r2);
    double mean = 0.0;
    for (double v : many.varCost)
        mean += v;
    mean /= static_cast<double>(many.varCost.size());
    CHECK(std::abs(mean - 5.0) <= 0.05);
}

TEST_CASE("ratio tuning passes") {
    GenConfig c;
    c.nodeCount = 10;
    c.extraRandomArcs = 60;
    c.commodityCount = 20;
    c.demMin = c.demMax = 20.0; // volume 400
    c.useComCapacity = true;
    Pcg32 rng(5, 5);
    const DetInstance base = generate(c, rng);
    REQUIRE(total_volume(base) == 400.0);

    SUBCASE("all ratios zero") { CHECK(tune_random_arcs(base, c, rng) == base); }
    SUBCASE("zero fixed costs") {
        GenConfig t = c;
        t.ratioZeroFix = 1.0;
        const DetInstance out = tune_random_arcs(base, t, rng);
        for (double f : out.fixedCost)
            CHECK(f == 0.0);
    }
    SUBCASE("full capacity on half the arcs") {
        GenConfig t = c;
        t.ratioFullCap = 0.5;
        const DetInstance out = tune_random_arcs(base, t, rng);
        CHECK(std::count(out.capacity.begin(), out.capacity.end(), 400.0) == 30);
    }
    SUBCASE("commodity capacity passes") {
        GenConfig t = c;
        t.ratioZeroBnd = 0.25;
        t.ratioMaxBnd = 0.25;
        const DetInstance out = tune_random_arcs(base, t, rng);
        std::size_t zeroArcs = 0, maxArcs = 0;
        for (std::size_t a = 0; a < out.arcCount(); ++a) {
            bool allZero = true, allMax = true;
            for (std::size_t k = 0; k < out.commodityCount(); ++k) {
                allZero = allZero && out.comCapacityAt(a, k) == 0.0;
                allMax = allMax && out.comCapacityAt(a, k) == out.capacity[a];
            }
            zeroArcs += allZero;
            maxArcs += allMax;
        }
        // The max pass runs last and may overwrite arcs zeroed by the first.
        CHECK(maxArcs == 15);
        CHECK(zeroArcs + maxArcs >= 15);
        CHECK(zeroArcs <= 15);
    }
    SUBCASE("commodity passes warn when commodity capacities are off") {
        GenConfig t = c;
        t.useComCapacity = false;
        t.ratioZeroBnd = 0.5;
        Pcg32 r(1, 1);
        const DetInstance plain = generate(t, r);
        std::vector<std::string> warnings;
        CHECK(tune_random_arcs(plain, t, r, 0, &warnings) == plain);
        CHECK(!warnings.empty());
    }
    SUBCASE("protected base arcs") {
        GenConfig t = c;
        t.ratioZeroFix = 1.0;
        const DetInstance out = tune_random_arcs(base, t, rng, 40);
        for (std::size_t a = 0; a < 40; ++a)
            CHECK(out.fixedCost[a] == base.fixedCost[a]);
        CHECK(std::count(out.fixedCost.begin(), out.fixedCost.end(), 0.0) == 20);
    }
}

TEST_CASE("tuneExtrasOnly spares grid arcs") {
    GenConfig c;
    c.topology = Topology::Grid;
    c.extraRandomArcs = 6;
    c.ratioZeroFix = 1.0;
    c.tuneExtrasOnly = true;
    Pcg32 rng(6, 6);
    const DetInstance inst = generate(c, rng);
    REQUIRE(inst.arcCount() == 30);
    for (std::size_t a = 0; a < 24; ++a)
        CHECK(inst.fixedCost[a] > 0.0);
}

TEST_CASE("design flow multipliers") {
    DetInstance inst;
    inst.graph = {2, {{0, 1}, {1, 0}, {0, 1}}};
    inst.commodities = {{0, 1, 1.0}};
    inst.fixedCost = {10, 0, 5};
    inst.capacity = {15, 20, 3};
    inst.varCost = {1, 1, 1};
    GenConfig c;
    c.fixMultiplier = 2.0;
    CHECK(tune_design_flow(inst, c).fixedCost == std::vector<double>{20, 0, 10});
    CHECK(tune_design_flow(inst, c).capacity == inst.capacity);

    c.fixMultiplier = 1.0;
    c.capMultiplier = 0.5;
    c.capInteger = true;
    CHECK(tune_design_flow(inst, c).capacity == std::vector<double>{8, 10, 2});

    c.capMultiplier = 0.0;
    CHECK_THROWS_AS(tune_design_flow(inst, c), ConfigError);
    c.capMultiplier = 1.0;
    c.fixMultiplier = 0.5;
    CHECK_THROWS_AS(tune_design_flow(inst, c), ConfigError);
}

TEST_CASE("round half up") {
    CHECK(round_half_up(7.5) == 8.0);
    CHECK(round_half_up(7.4999) == 7.0);
    CHECK(round_half_up(-0.5) == 0.0);
    CHECK(round_half_up(2.5) == 3.0);
}

TEST_CASE("benchmark-shaped instances have the requested cardinalities") {
    GenConfig c;
    c.nodeCount = 20;
    c.extraRandomArcs = 315;
    c.commodityCount = 200;
    Pcg32 rng;
    const DetInstance r18 = generate(c, rng);
    CHECK(r18.nodeCount() == 20);
    CHECK(r18.arcCount() == 315);
    CHECK(r18.commodityCount() == 200);
    CHECK(validate(r18, {.noParallel = true}).empty());

    c.nodeCount = 30;
    c.extraRandomArcs = 700;
    c.commodityCount = 400;
    const DetInstance c64 = generate(c, rng);
    CHECK(c64.nodeCount() == 30);
    CHECK(c64.arcCount() == 700);
    CHECK(c64.commodityCount() == 400);
}

TEST_CASE("generated instances are valid, deterministic and keep cardinalities") {
    Pcg32 meta(9, 9);
    for (int rep = 0; rep < 300; ++rep) {
        GenConfig c = oracle::random_config(meta);
        c.useComCapacity = rep % 3 == 0;
        c.ratioZeroBnd = c.useComCapacity ? 0.2 : 0.0;
        const std::uint64_t seed = meta.next64();
        Pcg32 a(seed, 1), b(seed, 1);
        const DetInstance x = generate(c, a);
        const DetInstance y = generate(c, b);
        CHECK(x == y);
        CHECK(validate(x, {.noParallel = !c.allowParallel, .capInteger = c.capInteger,
                           .bndInteger = c.bndInteger})
                  .empty());
        CHECK(x.arcCount() == base_arc_count(c) + c.extraRandomArcs);
        for (double v : x.capacity)
            CHECK(v >= 0.0);
        for (double v : x.fixedCost)
            CHECK(v >= 0.0);
    }
}

TEST_CASE("different streams give different instances") {
    GenConfig c;
    Pcg32 a(42, 1), b(42, 2);
    CHECK_FALSE(generate(c, a) == generate(c, b));
}

TEST_CASE("configuration validation") {
    GenConfig c;
    c.demMin = 30;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = GenConfig{};
    c.ratioFullCap = 1.5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = GenConfig{};
    c.capMultiplier = 1.5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = GenConfig{};
    c.commodityCount = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    CHECK_NOTHROW(GenConfig{}.validate());
}
