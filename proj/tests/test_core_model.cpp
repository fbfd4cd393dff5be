#include <doctest.h>

#include <numeric>

#include "ndgen/core_model.hpp"
#include "ndgen/error.hpp"
#include "oracles.hpp"

using namespace ndgen;

namespace {

DetInstance two_node() {
    DetInstance inst;
    inst.graph = {2, {{0, 1}}};
    inst.commodities = {{0, 1, 5.0}};
    inst.fixedCost = {10.0};
    inst.capacity = {10.0};
    inst.varCost = {1.0};
    return inst;
}

DetInstance shaped(std::size_t arcs, std::size_t commodities) {
    DetInstance inst;
    inst.graph.nodeCount = 2;
    for (std::size_t a = 0; a < arcs; ++a)
        inst.graph.arcs.push_back({a % 2, 1 - a % 2});
    for (std::size_t k = 0; k < commodities; ++k)
        inst.commodities.push_back({0, 1, 1.0 + static_cast<double>(k)});
    inst.fixedCost.assign(arcs, 1.0);
    inst.capacity.assign(arcs, 2.0);
    inst.varCost.assign(arcs * commodities, 3.0);
    return inst;
}

} // namespace

TEST_CASE("node balance places demand at origin and destination") {
    DetInstance inst;
    inst.graph = {6, {{2, 5}}};
    inst.commodities = {{2, 5, 40.0}};
    inst.fixedCost = {0};
    inst.capacity = {0};
    inst.varCost = {0};
    CHECK(node_balance(inst, 0) == std::vector<double>{0, 0, 40, 0, 0, -40});
    CHECK(node_balance(inst, 0, 15.0) == std::vector<double>{0, 0, 15, 0, 0, -15});
    CHECK(node_balance(inst, 0, 0.0) == std::vector<double>(6, 0.0));
    CHECK_THROWS_AS(node_balance(inst, 1), IndexError);
}

TEST_CASE("node balance sums to zero for any demand") {
    Pcg32 rng(3, 9);
    for (int rep = 0; rep < 200; ++rep) {
        const DetInstance inst = oracle::random_instance(rng, false);
        for (std::size_t k = 0; k < inst.commodityCount(); ++k) {
            const auto w = node_balance(inst, k, uniform_real(rng, 0.0, 1e6));
            CHECK(std::accumulate(w.begin(), w.end(), 0.0) == 0.0);
        }
    }
}

TEST_CASE("validate reports each violation") {
    CHECK(validate(two_node()).empty());

    DetInstance loop = two_node();
    loop.graph.arcs[0] = {1, 1};
    const auto v = validate(loop);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "self-loop at arc 0");

    DetInstance neg = shaped(5, 1);
    neg.capacity[3] = -1.0;
    const auto w = validate(neg);
    REQUIRE(w.size() == 1);
    CHECK(w[0].find("arc 3") != std::string::npos);

    DetInstance bad = two_node();
    bad.commodities[0].destination = 0;
    bad.varCost.clear();
    CHECK(validate(bad).size() == 2);

    DetInstance parallel = two_node();
    parallel.graph.arcs.push_back({0, 1});
    parallel.fixedCost.push_back(1);
    parallel.capacity.push_back(1);
    parallel.varCost.push_back(1);
    CHECK(validate(parallel).empty());
    CHECK(validate(parallel, {.noParallel = true}).size() == 1);

    DetInstance frac = two_node();
    frac.capacity[0] = 2.5;
    CHECK(validate(frac, {.capInteger = true}).size() == 1);
}

TEST_CASE("total volume") {
    DetInstance inst = shaped(1, 3);
    inst.commodities[0].demand = 10;
    inst.commodities[1].demand = 25;
    inst.commodities[2].demand = 5;
    CHECK(total_volume(inst) == 40.0);
    CHECK(total_volume(shaped(1, 0)) == 0.0);
}

TEST_CASE("selection order and counts") {
    const RandomizationSelection sel(31, 2, 2);
    REQUIRE(sel.size() == 2 + 2 + 4 + 2 + 4);
    CHECK(sel[0] == VariableRef{Family::Demand, 0, 0});
    CHECK(sel[1] == VariableRef{Family::Demand, 0, 1});
    CHECK(sel[2] == VariableRef{Family::ArcCapacity, 0, 0});
    CHECK(sel[3] == VariableRef{Family::ArcCapacity, 1, 0});
    CHECK(sel[4] == VariableRef{Family::ComCapacity, 0, 0});
    CHECK(sel[5] == VariableRef{Family::ComCapacity, 0, 1});
    CHECK(sel[6] == VariableRef{Family::ComCapacity, 1, 0});
    CHECK(sel[8] == VariableRef{Family::FixedCost, 0, 0});
    CHECK(sel[10] == VariableRef{Family::VarCost, 0, 0});
    CHECK(sel[13] == VariableRef{Family::VarCost, 1, 1});

    for (unsigned mask = 0; mask < 32; ++mask)
        for (std::size_t a : {0u, 1u, 7u})
            for (std::size_t k : {0u, 1u, 4u}) {
                const std::size_t expected = k * ((mask & 1) != 0) + a * ((mask & 2) != 0) + a * k * ((mask & 4) != 0) +
                                             a * ((mask & 8) != 0) + a * k * ((mask & 16) != 0);
                CHECK(RandomizationSelection(mask, a, k).size() == expected);
                CHECK(RandomizationSelection::countFor(mask, a, k) == expected);
            }
}

TEST_CASE("flatten lengths for the benchmark shapes") {
    const unsigned mask = static_cast<unsigned>(Family::Demand) | static_cast<unsigned>(Family::ArcCapacity);
    CHECK(flatten(shaped(60, 25), RandomizationSelection(mask, 60, 25)).size() == 85);
    CHECK(flatten(shaped(83, 50), RandomizationSelection(mask, 83, 50)).size() == 133);
    CHECK(flatten(shaped(220, 100), RandomizationSelection(mask, 220, 100)).size() == 320);
    CHECK(flatten(shaped(315, 200), RandomizationSelection(mask, 315, 200)).size() == 515);
}

TEST_CASE("flatten values and errors") {
    DetInstance inst = shaped(2, 3);
    inst.commodities[0].demand = 10;
    inst.commodities[1].demand = 25;
    inst.commodities[2].demand = 5;
    CHECK(flatten(inst, RandomizationSelection(1, 2, 3)) == std::vector<double>{10, 25, 5});
    CHECK_THROWS_AS(flatten(inst, RandomizationSelection(4, 2, 3)), ConfigError);
    CHECK_THROWS_AS(flatten(inst, RandomizationSelection(1, 2, 4)), ShapeError);
}

TEST_CASE("flatten then unflatten is the identity") {
    Pcg32 rng(11, 2);
    for (int rep = 0; rep < 100; ++rep) {
        const bool useB = rep % 2 == 0;
        const DetInstance inst = oracle::random_instance(rng, useB);
        const unsigned mask = static_cast<unsigned>(uniform_int(rng, 1, 31)) & (useB ? 31u : 27u);
        const RandomizationSelection sel(mask, inst.arcCount(), inst.commodityCount());
        const auto values = flatten(inst, sel);
        CHECK(values.size() == sel.size());
        CHECK(unflatten(inst, sel, values) == inst);

        std::vector<double> shifted = values;
        for (double& x : shifted)
            x += 1.0;
        const DetInstance moved = unflatten(inst, sel, shifted);
        CHECK(flatten(moved, sel) == shifted);
        // Unselected families stay put.
        const RandomizationSelection rest(31u & ~mask & (useB ? 31u : 27u), inst.arcCount(), inst.commodityCount());
        CHECK(flatten(moved, rest) == flatten(inst, rest));
    }
}

TEST_CASE("scenario matrix probabilities") {
    const Eigen::MatrixXd v = Eigen::MatrixXd::Ones(2, 4);
    const ScenarioMatrix eq(v);
    CHECK(eq.probabilities().sum() == doctest::Approx(1.0));
    CHECK(eq.probabilities()[2] == 0.25);
    CHECK_THROWS_AS(ScenarioMatrix(v, Eigen::Vector4d(0.5, 0.5, 0.0, 0.0)), ConfigError);
    CHECK_THROWS_AS(ScenarioMatrix(v, Eigen::Vector4d(0.3, 0.3, 0.3, 0.3)), ConfigError);
    CHECK_THROWS(ScenarioMatrix(v, Eigen::Vector3d(0.3, 0.3, 0.4)));
}

TEST_CASE("family codes") {
    for (Family f : kAllFamilies)
        CHECK(familyFromCode(familyCode(f)) == f);
    CHECK(std::string{familyCode(Family::Demand), familyCode(Family::ArcCapacity), familyCode(Family::ComCapacity),
                      familyCode(Family::FixedCost), familyCode(Family::VarCost)} == "DABFC");
    CHECK_FALSE(familyFromCode('Z').has_value());
}
