#include <doctest.h>

#include <cmath>

#include "ndgen/error.hpp"
#include "ndgen/moments.hpp"
#include "oracles.hpp"

using namespace ndgen;

namespace {

void check_relative(const Moments4& got, const Moments4& ref, double tol) {
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    CHECK(rel(got.mean, ref.mean) <= tol);
    CHECK(rel(got.stdDev, ref.stdDev) <= tol);
    CHECK(rel(got.skewness, ref.skewness) <= tol);
    CHECK(rel(got.kurtosis, ref.kurtosis) <= tol);
}

DetInstance with_demands(std::vector<double> demands, std::vector<double> capacities) {
    DetInstance inst;
    inst.graph.nodeCount = 2;
    for (std::size_t a = 0; a < capacities.size(); ++a)
        inst.graph.arcs.push_back({0, 1});
    for (double d : demands)
        inst.commodities.push_back({0, 1, d});
    inst.fixedCost.assign(capacities.size(), 1.0);
    inst.capacity = std::move(capacities);
    inst.varCost.assign(inst.arcCount() * inst.commodityCount(), 1.0);
    return inst;
}

} // namespace

TEST_CASE("uniform targets") {
    const Moments4 m = uniform_targets(100, 0.25, 0.25);
    CHECK(m.mean == 100.0);
    CHECK(m.stdDev == doctest::Approx(14.433757).epsilon(1e-7));
    CHECK(m.skewness == 0.0);
    CHECK(m.kurtosis == 1.8);

    const Moments4 shifted = uniform_targets(100, 0.0, 0.5);
    CHECK(shifted.mean == 125.0);
    CHECK(shifted.stdDev == doctest::Approx(14.433757).epsilon(1e-7));

    CHECK_THROWS_AS(uniform_targets(100, 0.0, 0.0), ConfigError);
    CHECK_THROWS_AS(uniform_targets(0, 0.25, 0.25), ConfigError);
    CHECK_THROWS_AS(uniform_targets(100, 1.0, 0.25), ConfigError);
}

TEST_CASE("triangular targets") {
    const Moments4 m = triangular_targets(100, 0.25, 0.25);
    CHECK(m.mean == doctest::Approx(100.0));
    CHECK(m.stdDev == doctest::Approx(10.206207).epsilon(1e-7));
    CHECK(std::abs(m.skewness) < 1e-15);
    CHECK(m.kurtosis == 2.4);

    const Moments4 skewed = triangular_targets(100, 0.25, 0.5);
    CHECK(skewed.mean == doctest::Approx(325.0 / 3.0));
    CHECK(skewed.skewness > 0.0);
}

TEST_CASE("triangular skewness against Monte Carlo") {
    Pcg32 rng(12, 12);
    const double a = 75, b = 150, c = 100;
    const double fc = (c - a) / (b - a);
    const int n = 10'000'000;
    double s1 = 0, s2 = 0, s3 = 0;
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) {
        const double u = rng.canonical();
        xs[i] = u < fc ? a + std::sqrt(u * (b - a) * (c - a)) : b - std::sqrt((1 - u) * (b - a) * (b - c));
        s1 += xs[i];
    }
    const double mean = s1 / n;
    for (double x : xs) {
        s2 += (x - mean) * (x - mean);
        s3 += (x - mean) * (x - mean) * (x - mean);
    }
    const double skew = (s3 / n) / std::pow(s2 / n, 1.5);
    CHECK(std::abs(skew - triangular_targets(100, 0.25, 0.5).skewness) <= 1e-3);
}

TEST_CASE("closed forms agree with quadrature over a parameter grid") {
    for (double D : {0.5, 1.0, 17.0, 100.0, 4321.0})
        for (double alpha : {0.0, 0.1, 0.25, 0.5, 0.9})
            for (double beta : {0.0, 0.05, 0.25, 0.3, 1.0, 2.5}) {
                if (alpha + beta == 0.0)
                    continue;
                CAPTURE(D);
                CAPTURE(alpha);
                CAPTURE(beta);
                check_relative(uniform_targets(D, alpha, beta), oracle::uniform_by_quadrature(D, alpha, beta), 1e-9);
                check_relative(triangular_targets(D, alpha, beta), oracle::triangular_by_quadrature(D, alpha, beta),
                               1e-9);
                CHECK(uniform_targets(D, alpha, beta).kurtosis == 1.8);
                CHECK(triangular_targets(D, alpha, beta).kurtosis == 2.4);
            }
}

TEST_CASE("assemble targets") {
    const DetInstance inst = with_demands({10, 20}, {50});
    const RandomizationSelection sel(1, 1, 2);
    const MomentTargets t = assemble_targets(inst, sel, TargetDistribution::Uniform, 0.25, 0.25);
    REQUIRE(t.size() == 2);
    CHECK(t.rows[0].mean == 10.0);
    CHECK(t.rows[0].stdDev == doctest::Approx(1.4434).epsilon(1e-4));
    CHECK(t.rows[1].stdDev == doctest::Approx(2.8868).epsilon(1e-4));
    CHECK(t.rows[1].kurtosis == 1.8);

    CHECK_THROWS_AS(assemble_targets(inst, RandomizationSelection(0, 1, 2), TargetDistribution::Uniform, 0.25, 0.25),
                    ConfigError);

    const DetInstance zero = with_demands({10, 0}, {50});
    try {
        assemble_targets(zero, sel, TargetDistribution::Uniform, 0.25, 0.25);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("commodity 2") != std::string::npos);
    }

    const DetInstance r05 = with_demands(std::vector<double>(25, 10.0), std::vector<double>(60, 100.0));
    CHECK(assemble_targets(r05, RandomizationSelection(3, 60, 25), TargetDistribution::Triangular, 0.25, 0.25).size() ==
          85);
}

TEST_CASE("moment target validation") {
    MomentTargets t{{{0, 1, 0, 1.8}}};
    CHECK_NOTHROW(t.validate());
    t.rows[0].kurtosis = 0.5;
    CHECK_THROWS_AS(t.validate(), ConfigError);
    t.rows[0] = {0, 0, 0, 3};
    CHECK_THROWS_AS(t.validate(), ConfigError);
}

TEST_CASE("block correlation assembly") {
    const RandomizationSelection sel(3, 2, 2);
    const BlockCorrelations blocks = {{block(Family::Demand, Family::Demand), 0.5},
                                      {block(Family::ArcCapacity, Family::ArcCapacity), 0.7},
                                      {block(Family::ArcCapacity, Family::Demand), -0.3}};
    const CorrelationMatrix R = assemble_correlation(sel, blocks);
    Eigen::Matrix4d expected;
    expected << 1, .5, -.3, -.3, .5, 1, -.3, -.3, -.3, -.3, 1, .7, -.3, -.3, .7, 1;
    CHECK(R.values() == expected);
    CHECK((R.cholesky() * R.cholesky().transpose() - expected).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(R.values() == R.values().transpose());

    CHECK(assemble_correlation(sel, {}).values() == Eigen::Matrix4d::Identity());
    CHECK_THROWS_AS(assemble_correlation(sel, {{block(Family::Demand, Family::Demand), 1.0}}), ConfigError);

    // A moderate cross-block value is too strong once the blocks are large and weakly
    // correlated internally (smallest eigenvalue 0.9 - 0.4 * 20 < 0).
    const RandomizationSelection big(3, 20, 20);
    try {
        assemble_correlation(big, {{block(Family::Demand, Family::Demand), 0.1},
                                   {block(Family::ArcCapacity, Family::ArcCapacity), 0.1},
                                   {block(Family::Demand, Family::ArcCapacity), -0.5}});
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("DA") != std::string::npos);
    }
}

TEST_CASE("correlation matrix checks") {
    Eigen::Matrix2d m;
    m << 1, 0.3, 0.3, 1;
    CHECK_NOTHROW(CorrelationMatrix{m});
    m(0, 1) = 0.31;
    CHECK_THROWS_AS(CorrelationMatrix{m}, ConfigError);
    m << 1.1, 0, 0, 1;
    CHECK_THROWS_AS(CorrelationMatrix{m}, ConfigError);
    m << 1, 1, 1, 1;
    CHECK_THROWS_AS(CorrelationMatrix{m}, ConfigError);
    CHECK(CorrelationMatrix::identity(3).cholesky() == Eigen::Matrix3d::Identity());
}
