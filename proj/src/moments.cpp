#include "ndgen/moments.hpp"

#include <cmath>
#include <sstream>

#include "ndgen/error.hpp"

namespace ndgen {

void MomentTargets::validate() const
{
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Moments4& m = rows[i];
        if (!(m.stdDev > 0.0))
            throw ConfigError("moment target " + std::to_string(i + 1) + " has non-positive standard deviation");
        if (!(m.kurtosis >= 1.0 + m.skewness * m.skewness - 1e-12))
            throw ConfigError("moment target " + std::to_string(i + 1) + " violates kurtosis >= 1 + skewness^2");
    }
}

namespace {

void check_perturbation(double base, double alpha, double beta)
{
    if (!(base > 0.0))
        throw ConfigError("base value must be positive");
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw ConfigError("alpha must lie in [0, 1)");
    if (!(beta >= 0.0))
        throw ConfigError("beta must be nonnegative");
    if (alpha + beta == 0.0)
        throw ConfigError("alpha + beta = 0 gives a degenerate distribution with zero variance");
}

} // namespace

Moments4 uniform_targets(double base, double alpha, double beta)
{
    check_perturbation(base, alpha, beta);
    const double a = base - alpha * base;
    const double b = base + beta * base;
    return {(a + b) / 2.0, (b - a) / std::sqrt(12.0), 0.0, 9.0 / 5.0};
}

Moments4 triangular_targets(double base, double alpha, double beta)
{
    check_perturbation(base, alpha, beta);
    const double a = base - alpha * base;
    const double b = base + beta * base;
    const double c = base;
    const double q = a * a + b * b + c * c - a * b - a * c - b * c;
    const double skew = std::sqrt(2.0) * (a + b - 2.0 * c) * (2.0 * a - b - c) * (a - 2.0 * b + c) /
                        (5.0 * std::pow(q, 1.5));
    return {(a + b + c) / 3.0, std::sqrt(q / 18.0), skew, 12.0 / 5.0};
}

MomentTargets assemble_targets(const DetInstance& base, const RandomizationSelection& selection,
                               TargetDistribution dist, double alpha, double beta)
{
    if (selection.empty())
        throw ConfigError("no parameters selected for randomization");
    const std::vector<double> values = flatten(base, selection);

    std::vector<std::string> zeros;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0)) {
            const VariableRef& v = selection[i];
            std::ostringstream os;
            os << familyName(v.family);
            if (v.family != Family::Demand)
                os << " arc " << v.arc + 1;
            if (v.family == Family::Demand || v.family == Family::ComCapacity || v.family == Family::VarCost)
                os << " commodity " << v.commodity + 1;
            zeros.push_back(os.str());
        }
    }
    if (!zeros.empty()) {
        std::string msg = "cannot randomize non-positive base values:";
        const std::size_t shown = std::min<std::size_t>(zeros.size(), 10);
        for (std::size_t i = 0; i < shown; ++i)
            msg += (i ? ", " : " ") + zeros[i];
        if (zeros.size() > shown)
            msg += " and " + std::to_string(zeros.size() - shown) + " more";
        throw ConfigError(msg);
    }

    MomentTargets out;
    out.rows.reserve(values.size());
    for (double d : values)
        out.rows.push_back(dist == TargetDistribution::Uniform ? uniform_targets(d, alpha, beta)
                                                               : triangular_targets(d, alpha, beta));
    return out;
}

CorrelationMatrix::CorrelationMatrix(Eigen::MatrixXd values, double tol) : values_(std::move(values))
{
    const Eigen::Index n = values_.rows();
    if (n < 1 || values_.cols() != n)
        throw ShapeError("correlation matrix must be square and non-empty");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(values_(i, i) - 1.0) > tol)
            throw ConfigError("correlation matrix diagonal entry " + std::to_string(i + 1) + " is not 1");
        for (Eigen::Index j = 0; j < i; ++j) {
            if (std::abs(values_(i, j) - values_(j, i)) > tol)
                throw ConfigError("correlation matrix is not symmetric at (" + std::to_string(i + 1) + ", " +
                                  std::to_string(j + 1) + ")");
            if (!(std::abs(values_(i, j)) <= 1.0))
                throw ConfigError("correlation entry outside [-1, 1]");
        }
    }
    // Store the exact symmetric part so downstream code sees R == R^T bit for bit.
    values_ = (0.5 * (values_ + values_.transpose())).eval();
    values_.diagonal().setOnes();

    Eigen::LLT<Eigen::MatrixXd> llt(values_);
    if (llt.info() != Eigen::Success)
        throw ConfigError("correlation matrix is not positive definite");
    lower_ = llt.matrixL();
    if (!(lower_.diagonal().minCoeff() > 0.0))
        throw ConfigError("correlation matrix is not positive definite");
}

FamilyPair block(Family a, Family b)
{
    return static_cast<unsigned>(a) <= static_cast<unsigned>(b) ? FamilyPair{a, b} : FamilyPair{b, a};
}

CorrelationMatrix assemble_correlation(const RandomizationSelection& selection, const BlockCorrelations& blockValues)
{
    if (selection.empty())
        throw ConfigError("no parameters selected for randomization");

    BlockCorrelations normalized;
    for (const auto& [key, value] : blockValues) {
        if (!(value > -1.0 && value < 1.0))
            throw ConfigError(std::string("block correlation ") + familyCode(key.first) + familyCode(key.second) +
                              " = " + std::to_string(value) + " must lie in (-1, 1)");
        normalized[block(key.first, key.second)] = value;
    }

    const std::size_t n = selection.size();
    Eigen::MatrixXd R = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            const auto it = normalized.find(block(selection[i].family, selection[j].family));
            const double v = it == normalized.end() ? 0.0 : it->second;
            R(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            R(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }

    try {
        return CorrelationMatrix(std::move(R));
    } catch (const ConfigError&) {
        std::string msg = "block correlations do not form a positive definite matrix:";
        for (const auto& [key, value] : normalized)
            msg += std::string(" X") + familyCode(key.first) + familyCode(key.second) + "=" + std::to_string(value);
        throw ConfigError(msg);
    }
}

} // namespace ndgen
