#include "ndgen/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "ndgen/error.hpp"

namespace ndgen {

std::size_t LpProblem::addVariable(double cost, double lo, double hi)
{
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(hi);
    return variableCount++;
}

namespace {

using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

/// Product-form update of the basis inverse: column `row` of the identity replaced.
struct Eta {
    Eigen::Index row;
    double pivot;
    std::vector<std::pair<Eigen::Index, double>> others;
};

class RevisedSimplex {
public:
    RevisedSimplex(const LpProblem& lp, const SimplexOptions& opts) : lp_(lp), opts_(opts)
    {
        m_ = static_cast<Eigen::Index>(lp.rowCount());
        nStruct_ = lp.variableCount;
        if (lp.objective.size() != nStruct_ || lp.lower.size() != nStruct_ || lp.upper.size() != nStruct_)
            throw ShapeError("LP objective/bound arrays do not match the variable count");
        buildColumns();
    }

    LpSolution run()
    {
        LpSolution sol;
        for (std::size_t j = 0; j < nStruct_; ++j)
            if (lb_[j] > ub_[j]) {
                sol.status = LpStatus::Infeasible;
                return sol;
            }

        initialBasis();

        if (firstArtificial_ < lb_.size()) {
            std::fill(cost_.begin(), cost_.end(), 0.0);
            for (std::size_t j = firstArtificial_; j < lb_.size(); ++j)
                cost_[j] = 1.0;
            if (iterate() == LpStatus::Unbounded)
                throw Error("phase 1 reported unbounded; this indicates a numerical breakdown");
            double infeas = 0.0;
            for (std::size_t j = firstArtificial_; j < lb_.size(); ++j)
                infeas += x_[j];
            double scale = 1.0;
            for (const LpRow& row : lp_.rows)
                scale = std::max(scale, std::abs(row.rhs));
            if (infeas > opts_.primalTol * scale) {
                sol.status = LpStatus::Infeasible;
                sol.iterations = iterations_;
                return sol;
            }
            for (std::size_t j = firstArtificial_; j < lb_.size(); ++j) {
                ub_[j] = 0.0;
                if (basisPos_[j] < 0 || x_[j] < 0.0)
                    x_[j] = 0.0;
            }
        }

        std::fill(cost_.begin(), cost_.end(), 0.0);
        std::copy(lp_.objective.begin(), lp_.objective.end(), cost_.begin());
        const LpStatus status = iterate();

        sol.status = status;
        sol.iterations = iterations_;
        sol.x.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(nStruct_));
        for (std::size_t j = 0; j < nStruct_; ++j)
            sol.x[j] = std::clamp(sol.x[j], lb_[j], ub_[j]);
        if (status == LpStatus::Optimal) {
            double obj = 0.0;
            for (std::size_t j = 0; j < nStruct_; ++j)
                obj += lp_.objective[j] * sol.x[j];
            sol.objective = obj;
        } else {
            sol.objective = -kInfinity;
        }
        return sol;
    }

private:
    void buildColumns()
    {
        std::vector<std::vector<std::pair<Eigen::Index, double>>> cols(nStruct_);
        for (std::size_t r = 0; r < lp_.rows.size(); ++r) {
            const LpRow& row = lp_.rows[r];
            if (row.index.size() != row.value.size())
                throw ShapeError("LP row " + std::to_string(r) + " has mismatched index/value arrays");
            for (std::size_t e = 0; e < row.index.size(); ++e) {
                if (row.index[e] >= nStruct_)
                    throw IndexError("LP row " + std::to_string(r) + " references variable " +
                                     std::to_string(row.index[e]));
                if (row.value[e] != 0.0)
                    cols[row.index[e]].push_back({static_cast<Eigen::Index>(r), row.value[e]});
            }
        }
        colStart_.push_back(0);
        for (std::size_t j = 0; j < nStruct_; ++j) {
            std::sort(cols[j].begin(), cols[j].end());
            // Merge duplicate entries of the same row.
            for (std::size_t e = 0; e < cols[j].size(); ++e) {
                if (e > 0 && cols[j][e].first == cols[j][e - 1].first)
                    colVal_.back() += cols[j][e].second;
                else {
                    colRow_.push_back(cols[j][e].first);
                    colVal_.push_back(cols[j][e].second);
                }
            }
            colStart_.push_back(colRow_.size());
            lb_.push_back(lp_.lower[j]);
            ub_.push_back(lp_.upper[j]);
            if (!std::isfinite(lp_.lower[j]))
                throw ConfigError("LP variable " + std::to_string(j) + " needs a finite lower bound");
        }
        // Logical column per row: +e_r, [0, inf) for <= rows, fixed at 0 for equalities.
        for (Eigen::Index r = 0; r < m_; ++r) {
            appendColumn(r, 1.0);
            lb_.push_back(0.0);
            ub_.push_back(lp_.rows[static_cast<std::size_t>(r)].sense == RowSense::LessEqual ? kInfinity : 0.0);
        }
        firstArtificial_ = lb_.size();
    }

    void appendColumn(Eigen::Index row, double value)
    {
        colRow_.push_back(row);
        colVal_.push_back(value);
        colStart_.push_back(colRow_.size());
    }

    std::size_t columnCount() const { return lb_.size(); }

    void initialBasis()
    {
        x_.assign(columnCount(), 0.0);
        for (std::size_t j = 0; j < nStruct_; ++j)
            x_[j] = lb_[j];

        std::vector<double> residual(static_cast<std::size_t>(m_));
        for (Eigen::Index r = 0; r < m_; ++r)
            residual[static_cast<std::size_t>(r)] = lp_.rows[static_cast<std::size_t>(r)].rhs;
        for (std::size_t j = 0; j < nStruct_; ++j)
            if (x_[j] != 0.0)
                for (std::size_t e = colStart_[j]; e < colStart_[j + 1]; ++e)
                    residual[static_cast<std::size_t>(colRow_[e])] -= colVal_[e] * x_[j];

        basisHead_.assign(static_cast<std::size_t>(m_), 0);
        basisPos_.assign(columnCount(), -1);

        // Crash: rows whose logical would be infeasible take a structural singleton column.
        std::vector<std::vector<std::size_t>> singletons(static_cast<std::size_t>(m_));
        for (std::size_t j = 0; j < nStruct_; ++j)
            if (colStart_[j + 1] - colStart_[j] == 1 && lb_[j] < ub_[j])
                singletons[static_cast<std::size_t>(colRow_[colStart_[j]])].push_back(j);

        std::vector<std::pair<Eigen::Index, double>> artificials;
        for (Eigen::Index r = 0; r < m_; ++r) {
            const auto ru = static_cast<std::size_t>(r);
            const std::size_t logical = nStruct_ + ru;
            const double res = residual[ru];
            const bool logicalOk = res >= -opts_.primalTol && res <= ub_[logical] + opts_.primalTol;
            if (logicalOk) {
                setBasic(r, logical, std::clamp(res, 0.0, ub_[logical]));
                continue;
            }
            bool placed = false;
            for (std::size_t j : singletons[ru]) {
                const double a = colVal_[colStart_[j]];
                const double v = x_[j] + res / a;
                if (v >= lb_[j] && v <= ub_[j]) {
                    setBasic(r, j, v);
                    placed = true;
                    break;
                }
            }
            if (!placed)
                artificials.push_back({r, res});
        }
        for (const auto& [r, res] : artificials) {
            const std::size_t j = columnCount();
            appendColumn(r, res > 0.0 ? 1.0 : -1.0);
            lb_.push_back(0.0);
            ub_.push_back(kInfinity);
            x_.push_back(0.0);
            basisPos_.push_back(-1);
            setBasic(r, j, std::abs(res));
            x_[nStruct_ + static_cast<std::size_t>(r)] = 0.0;
        }
        cost_.assign(columnCount(), 0.0);
        refactor();
    }

    void setBasic(Eigen::Index r, std::size_t j, double value)
    {
        basisHead_[static_cast<std::size_t>(r)] = j;
        basisPos_[j] = r;
        x_[j] = value;
    }

    void refactor()
    {
        std::vector<Eigen::Triplet<double, int>> trips;
        for (Eigen::Index r = 0; r < m_; ++r) {
            const std::size_t j = basisHead_[static_cast<std::size_t>(r)];
            for (std::size_t e = colStart_[j]; e < colStart_[j + 1]; ++e)
                trips.emplace_back(static_cast<int>(colRow_[e]), static_cast<int>(r), colVal_[e]);
        }
        SpMat B(m_, m_);
        B.setFromTriplets(trips.begin(), trips.end());
        B.makeCompressed();
        lu_.analyzePattern(B);
        lu_.factorize(B);
        if (lu_.info() != Eigen::Success)
            throw Error("simplex basis became singular");
        etas_.clear();

        // Recompute basic values from the nonbasic ones.
        Eigen::VectorXd rhs(m_);
        for (Eigen::Index r = 0; r < m_; ++r)
            rhs[r] = lp_.rows[static_cast<std::size_t>(r)].rhs;
        for (std::size_t j = 0; j < columnCount(); ++j)
            if (basisPos_[j] < 0 && x_[j] != 0.0)
                for (std::size_t e = colStart_[j]; e < colStart_[j + 1]; ++e)
                    rhs[colRow_[e]] -= colVal_[e] * x_[j];
        const Eigen::VectorXd xb = ftranDense(rhs);
        for (Eigen::Index r = 0; r < m_; ++r)
            x_[basisHead_[static_cast<std::size_t>(r)]] = xb[r];
    }

    Eigen::VectorXd ftranDense(const Eigen::VectorXd& rhs)
    {
        Eigen::VectorXd v = lu_.solve(rhs);
        for (const Eta& eta : etas_) {
            const double vr = v[eta.row] / eta.pivot;
            for (const auto& [i, a] : eta.others)
                v[i] -= a * vr;
            v[eta.row] = vr;
        }
        return v;
    }

    Eigen::VectorXd ftranColumn(std::size_t j)
    {
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
        for (std::size_t e = colStart_[j]; e < colStart_[j + 1]; ++e)
            rhs[colRow_[e]] = colVal_[e];
        return ftranDense(rhs);
    }

    Eigen::VectorXd btran(Eigen::VectorXd c)
    {
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double s = c[it->row];
            for (const auto& [i, a] : it->others)
                s -= a * c[i];
            c[it->row] = s / it->pivot;
        }
        return lu_.transpose().solve(c);
    }

    LpStatus iterate()
    {
        std::size_t degenerateRun = 0;
        bool bland = false;
        Eigen::VectorXd cb(m_);
        for (;;) {
            if (iterations_ >= opts_.maxIterations)
                throw SolverStall("simplex reached its limit of " + std::to_string(opts_.maxIterations) + " pivots");

            for (Eigen::Index r = 0; r < m_; ++r)
                cb[r] = cost_[basisHead_[static_cast<std::size_t>(r)]];
            const Eigen::VectorXd y = btran(cb);

            // Pricing.
            std::size_t entering = columnCount();
            double bestScore = 0.0;
            int direction = 0;
            for (std::size_t j = 0; j < columnCount(); ++j) {
                if (basisPos_[j] >= 0 || lb_[j] == ub_[j])
                    continue;
                double d = cost_[j];
                for (std::size_t e = colStart_[j]; e < colStart_[j + 1]; ++e)
                    d -= y[colRow_[e]] * colVal_[e];
                const bool atUpper = x_[j] >= ub_[j];
                int dir = 0;
                if (!atUpper && d < -opts_.dualTol)
                    dir = 1;
                else if (atUpper && d > opts_.dualTol)
                    dir = -1;
                if (dir == 0)
                    continue;
                if (bland) {
                    entering = j;
                    direction = dir;
                    break;
                }
                if (std::abs(d) > bestScore) {
                    bestScore = std::abs(d);
                    entering = j;
                    direction = dir;
                }
            }
            if (entering == columnCount())
                return LpStatus::Optimal;

            const Eigen::VectorXd alpha = ftranColumn(entering);

            // Ratio test. Basic i moves by -direction * alpha_i per unit step.
            double theta = ub_[entering] - lb_[entering];
            Eigen::Index leaveRow = -1;
            double leavePivot = 0.0;
            const double tieTol = 1e-12;
            for (Eigen::Index r = 0; r < m_; ++r) {
                const double a = direction * alpha[r];
                if (std::abs(a) <= opts_.pivotTol)
                    continue;
                const std::size_t j = basisHead_[static_cast<std::size_t>(r)];
                double limit;
                if (a > 0.0)
                    limit = (x_[j] - lb_[j]) / a;
                else if (std::isfinite(ub_[j]))
                    limit = (ub_[j] - x_[j]) / -a;
                else
                    continue;
                limit = std::max(limit, 0.0);
                bool take = false;
                if (limit < theta - tieTol)
                    take = true;
                else if (limit <= theta + tieTol && leaveRow >= 0) {
                    if (bland)
                        take = j < basisHead_[static_cast<std::size_t>(leaveRow)];
                    else
                        take = std::abs(a) > std::abs(leavePivot);
                }
                if (take) {
                    theta = std::min(theta, limit);
                    leaveRow = r;
                    leavePivot = a;
                }
            }
            if (leaveRow < 0 && !std::isfinite(theta))
                return LpStatus::Unbounded;

            ++iterations_;
            if (theta <= 1e-12) {
                if (++degenerateRun > opts_.blandAfter)
                    bland = true;
            } else {
                degenerateRun = 0;
                bland = false;
            }

            // Move along the edge.
            x_[entering] += direction * theta;
            for (Eigen::Index r = 0; r < m_; ++r)
                x_[basisHead_[static_cast<std::size_t>(r)]] -= direction * theta * alpha[r];

            if (leaveRow < 0) {
                // Bound flip of the entering variable; basis unchanged.
                x_[entering] = direction > 0 ? ub_[entering] : lb_[entering];
                continue;
            }

            const std::size_t leaving = basisHead_[static_cast<std::size_t>(leaveRow)];
            x_[leaving] = leavePivot > 0.0 ? lb_[leaving] : ub_[leaving];
            basisPos_[leaving] = -1;
            basisHead_[static_cast<std::size_t>(leaveRow)] = entering;
            basisPos_[entering] = leaveRow;

            Eta eta{leaveRow, alpha[leaveRow], {}};
            for (Eigen::Index r = 0; r < m_; ++r)
                if (r != leaveRow && alpha[r] != 0.0)
                    eta.others.push_back({r, alpha[r]});
            etas_.push_back(std::move(eta));
            if (etas_.size() >= opts_.refactorInterval)
                refactor();
            else
                clampBasics();
        }
    }

    void clampBasics()
    {
        for (Eigen::Index r = 0; r < m_; ++r) {
            const std::size_t j = basisHead_[static_cast<std::size_t>(r)];
            if (x_[j] < lb_[j] && x_[j] > lb_[j] - opts_.primalTol)
                x_[j] = lb_[j];
            else if (x_[j] > ub_[j] && x_[j] < ub_[j] + opts_.primalTol)
                x_[j] = ub_[j];
        }
    }

    const LpProblem& lp_;
    SimplexOptions opts_;
    Eigen::Index m_ = 0;
    std::size_t nStruct_ = 0;
    std::size_t firstArtificial_ = 0;

    std::vector<std::size_t> colStart_;
    std::vector<Eigen::Index> colRow_;
    std::vector<double> colVal_;
    std::vector<double> lb_, ub_, cost_, x_;

    std::vector<std::size_t> basisHead_;
    std::vector<Eigen::Index> basisPos_;

    Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu_;
    std::vector<Eta> etas_;
    std::size_t iterations_ = 0;
};

} // namespace

LpSolution solve_lp(const LpProblem& lp, const SimplexOptions& opts)
{
    if (lp.rowCount() == 0) {
        // Only bounds: each variable sits at the bound its cost prefers.
        LpSolution sol;
        sol.x.resize(lp.variableCount);
        double obj = 0.0;
        bool unbounded = false;
        for (std::size_t j = 0; j < lp.variableCount; ++j) {
            if (lp.lower[j] > lp.upper[j])
                return LpSolution{};
            if (lp.objective[j] < 0.0 && !std::isfinite(lp.upper[j]))
                unbounded = true;
            sol.x[j] = lp.objective[j] < 0.0 && std::isfinite(lp.upper[j]) ? lp.upper[j] : lp.lower[j];
            obj += lp.objective[j] * sol.x[j];
        }
        sol.status = unbounded ? LpStatus::Unbounded : LpStatus::Optimal;
        sol.objective = unbounded ? -kInfinity : obj;
        return sol;
    }
    return RevisedSimplex(lp, opts).run();
}

} // namespace ndgen
