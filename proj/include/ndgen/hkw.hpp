#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ndgen/core_model.hpp"
#include "ndgen/moments.hpp"
#include "ndgen/prng.hpp"

namespace ndgen {

// Moment-matching scenario construction: alternate a Cholesky-factor transformation of the
// whole matrix (correlations) with a per-row cubic transformation (first four moments) until
// both match their targets, restarting from fresh starting scenarios when an attempt stalls.

struct HkwOptions {
    std::size_t scenarioCount = 100;
    double momentTol = 1e-3;
    double corrTol = 1e-3;
    int maxIterations = 100;
    int maxTrials = 10;
    int verbosity = 0;
    /// Starting values for the first trial; later trials draw fresh normal starts.
    std::optional<ScenarioMatrix> startMatrix;
    /// Progress messages at verbosity >= 2.
    std::ostream* log = nullptr;
};

/// Row shifted and scaled to probability-weighted mean 0 and variance 1.
/// Throws ConfigError when the row has zero variance.
Eigen::VectorXd standardize(const Eigen::VectorXd& row, const Eigen::VectorXd& probs);

/// m[q] = sum_t p_t row_t^q for q = 0..maxOrder (m[0] = 1). maxOrder <= 12.
std::vector<double> raw_moments(const Eigen::VectorXd& row, const Eigen::VectorXd& probs, int maxOrder);

/// Probability-weighted (mean, stdDev, skewness, kurtosis) of a row.
Moments4 row_moments(const Eigen::VectorXd& row, const Eigen::VectorXd& probs);

struct CubicTransform {
    Eigen::VectorXd row;
    /// (a, b, c, d) of Y = a + bX + cX^2 + dX^3.
    std::array<double, 4> coefficients{};
    double residual = 0.0;
};

/// Maximum absolute residual accepted by the cubic Newton solve.
inline constexpr double kCubicResidualTol = 1e-12;

/// Cubic map of a standardized row whose raw moments become (0, 1, skewness, kurtosis) of
/// `stdTarget` (its mean/stdDev fields are ignored). Damped Newton from the identity, then from
/// five perturbed starts; std::nullopt when none converges.
std::optional<CubicTransform> cubic_transform(const Eigen::VectorXd& row, const Eigen::VectorXd& probs,
                                              const Moments4& stdTarget);

/// X' = L_target L_current^-1 X on standardized rows, rows re-standardized afterwards.
/// std::nullopt when the current correlation matrix is not positive definite.
std::optional<Eigen::MatrixXd> impose_correlation(const Eigen::MatrixXd& X, const Eigen::VectorXd& probs,
                                                  const CorrelationMatrix& target);

/// Probability-weighted correlation matrix of the rows of X.
Eigen::MatrixXd correlation_of(const Eigen::MatrixXd& X, const Eigen::VectorXd& probs);

struct MatchErrors {
    /// Max over rows of |mean error|/sigma, |stdDev error|/sigma, |skewness error|, |kurtosis error|.
    double moment = 0.0;
    /// Max over i < j of |C_ij - R_ij|.
    double corr = 0.0;
};

MatchErrors match_errors(const Eigen::MatrixXd& X, const Eigen::VectorXd& probs, const MomentTargets& targets,
                         const CorrelationMatrix& R);

struct HkwResult {
    ScenarioMatrix scenarios;
    MatchErrors errors;
    int trials = 0;
    int iterations = 0;
    /// Realized values below zero (not clamped; the feasibility screen decides).
    std::size_t negativeValues = 0;
};

/// Scenario matrix matching `targets` and `R`. `probs` empty means equiprobable with
/// opts.scenarioCount scenarios. Throws ConfigError when the scenario count does not exceed
/// the variable count, ConvergenceError (with best errors) when every trial fails.
HkwResult generate_scenarios(const MomentTargets& targets, const CorrelationMatrix& R, const HkwOptions& opts,
                             const Eigen::VectorXd& probs, Pcg32& rng);

} // namespace ndgen
