#pragma once

#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ndgen/core_model.hpp"

namespace ndgen {

/// Mean, standard deviation, normalized skewness and normalized kurtosis E[(X-mu)^4]/sigma^4.
struct Moments4 {
    double mean = 0.0;
    double stdDev = 1.0;
    double skewness = 0.0;
    double kurtosis = 3.0;

    friend bool operator==(const Moments4&, const Moments4&) = default;
};

/// Per-variable moment targets in canonical variable order.
struct MomentTargets {
    std::vector<Moments4> rows;

    std::size_t size() const noexcept { return rows.size(); }

    /// Throws ConfigError if a row has stdDev <= 0 or kurtosis < 1 + skewness^2.
    void validate() const;

    friend bool operator==(const MomentTargets&, const MomentTargets&) = default;
};

enum class TargetDistribution { Uniform, Triangular };

/// Moments of uniform(D - alpha*D, D + beta*D).
Moments4 uniform_targets(double base, double alpha, double beta);

/// Moments of triangular(D - alpha*D, D + beta*D, mode D).
Moments4 triangular_targets(double base, double alpha, double beta);

MomentTargets assemble_targets(const DetInstance& base, const RandomizationSelection& selection,
                               TargetDistribution dist, double alpha, double beta);

/// Symmetric, unit-diagonal, positive definite correlation matrix.
class CorrelationMatrix {
public:
    /// Validates symmetry (to `tol`), unit diagonal, entries in [-1, 1] and positive
    /// definiteness; throws ConfigError otherwise.
    explicit CorrelationMatrix(Eigen::MatrixXd values, double tol = 1e-12);

    static CorrelationMatrix identity(std::size_t n) { return CorrelationMatrix(Eigen::MatrixXd::Identity(n, n)); }

    std::size_t size() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    const Eigen::MatrixXd& values() const noexcept { return values_; }
    double operator()(std::size_t i, std::size_t j) const { return values_(i, j); }

    /// Lower Cholesky factor.
    const Eigen::MatrixXd& cholesky() const noexcept { return lower_; }

private:
    Eigen::MatrixXd values_;
    Eigen::MatrixXd lower_;
};

/// Unordered pair of families. Construct through `block()` so (A, D) and (D, A) coincide.
using FamilyPair = std::pair<Family, Family>;
FamilyPair block(Family a, Family b);

using BlockCorrelations = std::map<FamilyPair, double>;

/// R[i][j] = value of the block holding (family(i), family(j)); missing blocks are 0.
/// Throws ConfigError for values outside (-1, 1) or a non positive definite result.
CorrelationMatrix assemble_correlation(const RandomizationSelection& selection, const BlockCorrelations& blockValues);

} // namespace ndgen
