#include "ndgen/hkw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "ndgen/error.hpp"

namespace ndgen {

Eigen::VectorXd standardize(const Eigen::VectorXd& row, const Eigen::VectorXd& probs)
{
    if (row.size() != probs.size())
        throw ShapeError("row and probability vector lengths differ");
    const double mean = probs.dot(row);
    const Eigen::VectorXd centered = row.array() - mean;
    const double var = probs.dot(centered.cwiseAbs2());
    if (!(var > 0.0))
        throw ConfigError("cannot standardize a row with zero variance");
    Eigen::VectorXd out = centered / std::sqrt(var);
    // One correction pass removes the rounding left by the first.
    const double mean2 = probs.dot(out);
    out.array() -= mean2;
    const double var2 = probs.dot(out.cwiseAbs2());
    return out / std::sqrt(var2);
}

std::vector<double> raw_moments(const Eigen::VectorXd& row, const Eigen::VectorXd& probs, int maxOrder)
{
    if (maxOrder < 0 || maxOrder > 12)
        throw ConfigError("raw_moments: order must lie in [0, 12]");
    if (row.size() != probs.size())
        throw ShapeError("row and probability vector lengths differ");
    std::vector<double> m(static_cast<std::size_t>(maxOrder) + 1, 0.0);
    for (Eigen::Index t = 0; t < row.size(); ++t) {
        const double x = row[t];
        double power = probs[t];
        m[0] += power;
        for (int q = 1; q <= maxOrder; ++q) {
            power *= x;
            m[static_cast<std::size_t>(q)] += power;
        }
    }
    return m;
}

Moments4 row_moments(const Eigen::VectorXd& row, const Eigen::VectorXd& probs)
{
    const double mean = probs.dot(row);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (Eigen::Index t = 0; t < row.size(); ++t) {
        const double d = row[t] - mean;
        const double d2 = d * d;
        m2 += probs[t] * d2;
        m3 += probs[t] * d2 * d;
        m4 += probs[t] * d2 * d2;
    }
    const double sd = std::sqrt(m2);
    if (!(m2 > 0.0))
        return {mean, 0.0, 0.0, 0.0};
    return {mean, sd, m3 / (m2 * sd), m4 / (m2 * m2)};
}

namespace {

using Poly = std::vector<double>;

Poly multiply(const Poly& a, const Poly& b)
{
    Poly out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

/// Moment equations of Y = p(X) and their Jacobian, from the raw moments of X.
struct CubicSystem {
    const std::vector<double>& m;
    std::array<double, 4> target;

    Eigen::Vector4d residual(const Eigen::Vector4d& c, Eigen::Matrix4d* jac) const
    {
        const Poly p{c[0], c[1], c[2], c[3]};
        std::array<Poly, 5> powers;
        powers[0] = Poly{1.0};
        for (int q = 1; q <= 4; ++q)
            powers[static_cast<std::size_t>(q)] = multiply(powers[static_cast<std::size_t>(q - 1)], p);

        Eigen::Vector4d f;
        for (int q = 1; q <= 4; ++q) {
            const Poly& pq = powers[static_cast<std::size_t>(q)];
            double e = 0.0;
            for (std::size_t j = 0; j < pq.size(); ++j)
                e += pq[j] * m[j];
            f[q - 1] = e - target[static_cast<std::size_t>(q - 1)];
        }
        if (jac) {
            // d E[Y^q] / d c_r = q E[Y^(q-1) X^r]
            for (int q = 1; q <= 4; ++q) {
                const Poly& prev = powers[static_cast<std::size_t>(q - 1)];
                for (int r = 0; r < 4; ++r) {
                    double e = 0.0;
                    for (std::size_t j = 0; j < prev.size(); ++j)
                        e += prev[j] * m[j + static_cast<std::size_t>(r)];
                    (*jac)(q - 1, r) = q * e;
                }
            }
        }
        return f;
    }
};

constexpr int kNewtonSteps = 50;
constexpr int kHalvings = 20;

std::optional<Eigen::Vector4d> newton(const CubicSystem& sys, Eigen::Vector4d c)
{
    Eigen::Matrix4d jac;
    Eigen::Vector4d f = sys.residual(c, &jac);
    for (int step = 0; step <= kNewtonSteps; ++step) {
        if (!f.allFinite())
            return std::nullopt;
        if (f.cwiseAbs().maxCoeff() <= kCubicResidualTol)
            return c;
        if (step == kNewtonSteps)
            break;
        Eigen::FullPivLU<Eigen::Matrix4d> lu(jac);
        if (!lu.isInvertible())
            return std::nullopt;
        const Eigen::Vector4d delta = lu.solve(-f);
        if (!delta.allFinite())
            return std::nullopt;

        const double norm = f.norm();
        double t = 1.0;
        bool improved = false;
        for (int h = 0; h <= kHalvings; ++h, t *= 0.5) {
            const Eigen::Vector4d trial = c + t * delta;
            const Eigen::Vector4d ft = sys.residual(trial, nullptr);
            if (ft.allFinite() && ft.norm() < norm) {
                c = trial;
                improved = true;
                break;
            }
        }
        if (!improved)
            return std::nullopt;
        f = sys.residual(c, &jac);
    }
    return std::nullopt;
}

const std::array<Eigen::Vector4d, 6> kStarts = {
    Eigen::Vector4d(0.0, 1.0, 0.0, 0.0),    Eigen::Vector4d(0.0, 0.9, 0.0, 0.03),
    Eigen::Vector4d(0.0, 1.1, 0.0, -0.03),  Eigen::Vector4d(0.0, 0.95, 0.05, 0.02),
    Eigen::Vector4d(0.0, 0.95, -0.05, 0.02), Eigen::Vector4d(0.0, 0.8, 0.0, 0.06),
};

} // namespace

std::optional<CubicTransform> cubic_transform(const Eigen::VectorXd& row, const Eigen::VectorXd& probs,
                                              const Moments4& stdTarget)
{
    const std::vector<double> m = raw_moments(row, probs, 12);
    const CubicSystem sys{m, {0.0, 1.0, stdTarget.skewness, stdTarget.kurtosis}};
    for (const Eigen::Vector4d& start : kStarts) {
        const std::optional<Eigen::Vector4d> c = newton(sys, start);
        if (!c)
            continue;
        CubicTransform out;
        out.coefficients = {(*c)[0], (*c)[1], (*c)[2], (*c)[3]};
        out.residual = sys.residual(*c, nullptr).cwiseAbs().maxCoeff();
        out.row = row.unaryExpr([&](double x) { return (*c)[0] + x * ((*c)[1] + x * ((*c)[2] + x * (*c)[3])); });
        return out;
    }
    return std::nullopt;
}

Eigen::MatrixXd correlation_of(const Eigen::MatrixXd& X, const Eigen::VectorXd& probs)
{
    const Eigen::VectorXd mean = X * probs;
    const Eigen::MatrixXd centered = X.colwise() - mean;
    Eigen::MatrixXd cov = centered * probs.asDiagonal() * centered.transpose();
    const Eigen::VectorXd inv = cov.diagonal().cwiseSqrt().cwiseInverse();
    return inv.asDiagonal() * cov * inv.asDiagonal();
}

std::optional<Eigen::MatrixXd> impose_correlation(const Eigen::MatrixXd& X, const Eigen::VectorXd& probs,
                                                  const CorrelationMatrix& target)
{
    if (static_cast<std::size_t>(X.rows()) != target.size() || X.cols() != probs.size())
        throw ShapeError("impose_correlation: inconsistent shapes");

    Eigen::MatrixXd Z(X.rows(), X.cols());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const Eigen::VectorXd row = X.row(i).transpose();
        const double mean = probs.dot(row);
        const double var = probs.dot((row.array() - mean).matrix().cwiseAbs2());
        if (!(var > 0.0))
            return std::nullopt;
        Z.row(i) = ((row.array() - mean) / std::sqrt(var)).matrix().transpose();
    }

    Eigen::MatrixXd current = Z * probs.asDiagonal() * Z.transpose();
    current = 0.5 * (current + current.transpose());
    Eigen::LLT<Eigen::MatrixXd> llt(current);
    if (llt.info() != Eigen::Success)
        return std::nullopt;
    const Eigen::MatrixXd Lc = llt.matrixL();
    if (!(Lc.diagonal().minCoeff() > 0.0))
        return std::nullopt;

    Eigen::MatrixXd W = Lc.triangularView<Eigen::Lower>().solve(Z);
    Eigen::MatrixXd out = target.cholesky().triangularView<Eigen::Lower>() * W;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        const double mean = probs.dot(out.row(i).transpose());
        out.row(i).array() -= mean;
        const double var = probs.dot(out.row(i).transpose().cwiseAbs2());
        if (!(var > 0.0))
            return std::nullopt;
        out.row(i) /= std::sqrt(var);
    }
    if (!out.allFinite())
        return std::nullopt;
    return out;
}

MatchErrors match_errors(const Eigen::MatrixXd& X, const Eigen::VectorXd& probs, const MomentTargets& targets,
                         const CorrelationMatrix& R)
{
    if (static_cast<std::size_t>(X.rows()) != targets.size() || targets.size() != R.size() ||
        X.cols() != probs.size())
        throw ShapeError("match_errors: inconsistent shapes");
    MatchErrors e;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const Moments4 got = row_moments(X.row(i).transpose(), probs);
        const Moments4& want = targets.rows[static_cast<std::size_t>(i)];
        e.moment = std::max({e.moment, std::abs(got.mean - want.mean) / want.stdDev,
                             std::abs(got.stdDev - want.stdDev) / want.stdDev, std::abs(got.skewness - want.skewness),
                             std::abs(got.kurtosis - want.kurtosis)});
    }
    const Eigen::MatrixXd C = correlation_of(X, probs);
    for (Eigen::Index i = 0; i < C.rows(); ++i)
        for (Eigen::Index j = 0; j < i; ++j)
            e.corr = std::max(e.corr, std::abs(C(i, j) - R(static_cast<std::size_t>(i), static_cast<std::size_t>(j))));
    return e;
}

namespace {

/// Cubic step for one row. When the full target is out of reach of a single cubic map (for
/// instance a uniform kurtosis from a near-normal row), move part of the way instead.
std::optional<Eigen::VectorXd> moment_step(const Eigen::VectorXd& row, const Eigen::VectorXd& probs,
                                           const Moments4& target)
{
    if (auto full = cubic_transform(row, probs, target))
        return std::move(full->row);
    const Moments4 now = row_moments(row, probs);
    for (double frac = 0.5; frac >= 1.0 / 64.0; frac *= 0.5) {
        Moments4 partial = target;
        partial.skewness = now.skewness + frac * (target.skewness - now.skewness);
        partial.kurtosis = now.kurtosis + frac * (target.kurtosis - now.kurtosis);
        if (auto step = cubic_transform(row, probs, partial))
            return std::move(step->row);
    }
    return std::nullopt;
}

} // namespace

HkwResult generate_scenarios(const MomentTargets& targets, const CorrelationMatrix& R, const HkwOptions& opts,
                             const Eigen::VectorXd& probsIn, Pcg32& rng)
{
    const std::size_t n = targets.size();
    if (n == 0)
        throw ConfigError("no moment targets");
    if (R.size() != n)
        throw ShapeError("correlation matrix is " + std::to_string(R.size()) + "x" + std::to_string(R.size()) +
                         " but there are " + std::to_string(n) + " moment targets");
    targets.validate();

    const std::size_t s = probsIn.size() ? static_cast<std::size_t>(probsIn.size()) : opts.scenarioCount;
    if (s <= n)
        throw ConfigError("rank error: " + std::to_string(s) + " scenarios cannot match correlations of " +
                          std::to_string(n) + " variables (need at least " + std::to_string(n + 1) + ")");
    if (opts.maxTrials < 1 || opts.maxIterations < 1)
        throw ConfigError("trial and iteration limits must be positive");
    if (!(opts.momentTol > 0.0) || !(opts.corrTol > 0.0))
        throw ConfigError("matching tolerances must be positive");

    const auto ns = static_cast<Eigen::Index>(s);
    const auto nn = static_cast<Eigen::Index>(n);
    const Eigen::VectorXd probs = probsIn.size() ? probsIn : Eigen::VectorXd::Constant(ns, 1.0 / static_cast<double>(s));
    checkProbabilities(probs);

    if (opts.startMatrix && (opts.startMatrix->variableCount() != n || opts.startMatrix->scenarioCount() != s))
        throw ShapeError("starting matrix is " + std::to_string(opts.startMatrix->variableCount()) + "x" +
                         std::to_string(opts.startMatrix->scenarioCount()) + ", expected " + std::to_string(n) + "x" +
                         std::to_string(s));

    MomentTargets standardTargets = targets;
    for (Moments4& m : standardTargets.rows) {
        m.mean = 0.0;
        m.stdDev = 1.0;
    }

    auto say = [&](int level, const auto&... parts) {
        if (opts.log && opts.verbosity >= level) {
            ((*opts.log) << ... << parts);
            (*opts.log) << '\n';
        }
    };

    MatchErrors best{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    std::vector<double> draws(n * s);

    for (int trial = 1; trial <= opts.maxTrials; ++trial) {
        Eigen::MatrixXd X(nn, ns);
        if (trial == 1 && opts.startMatrix) {
            X = opts.startMatrix->values();
        } else {
            fill_standard_normal(rng, draws);
            for (Eigen::Index i = 0; i < nn; ++i)
                for (Eigen::Index t = 0; t < ns; ++t)
                    X(i, t) = draws[static_cast<std::size_t>(i * ns + t)];
        }

        bool ok = true;
        for (Eigen::Index i = 0; i < nn && ok; ++i) {
            const Eigen::VectorXd row = X.row(i).transpose();
            const double mean = probs.dot(row);
            if (!(probs.dot((row.array() - mean).matrix().cwiseAbs2()) > 0.0)) {
                ok = false;
                break;
            }
            X.row(i) = standardize(row, probs).transpose();
        }
        if (!ok) {
            say(2, "trial ", trial, ": degenerate starting row");
            continue;
        }

        for (int iter = 1; iter <= opts.maxIterations && ok; ++iter) {
            std::optional<Eigen::MatrixXd> correlated = impose_correlation(X, probs, R);
            if (!correlated) {
                say(2, "trial ", trial, " iteration ", iter, ": current correlation matrix is singular");
                ok = false;
                break;
            }
            X = std::move(*correlated);

            for (Eigen::Index i = 0; i < nn; ++i) {
                std::optional<Eigen::VectorXd> row =
                    moment_step(X.row(i).transpose(), probs, standardTargets.rows[static_cast<std::size_t>(i)]);
                if (!row) {
                    say(2, "trial ", trial, " iteration ", iter, ": cubic transformation failed for variable ", i + 1);
                    ok = false;
                    break;
                }
                X.row(i) = row->transpose();
            }
            if (!ok)
                break;

            const MatchErrors err = match_errors(X, probs, standardTargets, R);
            if (std::max(err.moment / opts.momentTol, err.corr / opts.corrTol) <
                std::max(best.moment / opts.momentTol, best.corr / opts.corrTol))
                best = err;
            say(2, "trial ", trial, " iteration ", iter, ": moment error ", err.moment, ", correlation error ",
                err.corr);

            if (err.moment <= opts.momentTol && err.corr <= opts.corrTol) {
                Eigen::MatrixXd values(nn, ns);
                std::size_t negatives = 0;
                for (Eigen::Index i = 0; i < nn; ++i) {
                    const Moments4& m = targets.rows[static_cast<std::size_t>(i)];
                    values.row(i) = (m.mean + m.stdDev * X.row(i).array()).matrix();
                    negatives += static_cast<std::size_t>((values.row(i).array() < 0.0).count());
                }
                say(1, "scenarios matched after ", trial, " trial(s), ", iter, " iteration(s): moment error ",
                    err.moment, ", correlation error ", err.corr);
                return HkwResult{ScenarioMatrix(std::move(values), probs), err, trial, iter, negatives};
            }
        }
    }
    throw ConvergenceError("scenario generation did not converge in " + std::to_string(opts.maxTrials) +
                               " trial(s); best moment error " + std::to_string(best.moment) +
                               ", best correlation error " + std::to_string(best.corr),
                           best.moment, best.corr);
}

} // namespace ndgen
