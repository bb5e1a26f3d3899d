#include "fleetopt/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <ostream>

namespace fleetopt {

namespace {

enum class RunStatus { Optimal, Unbounded, NumericFailure, IterationLimit };

// Working state of one solve. Variables are numbered structural columns
// first, then one slack per row, then the phase-one artificials.
class Engine {
public:
    using Entry = detail::ColumnEntry;

    Engine(std::vector<std::vector<Entry>> const &structural,
           std::vector<double> const &rhs,
           SimplexOptions const &options)
        : structural_(structural), rhs_(rhs), options_(options), m_(rhs.size()), n_(structural.size())
    {
    }

    LpSolution solve(IlpProblem const &problem, std::span<double const> lower, std::span<double const> upper);

private:
    template <typename F>
    void forEachEntry(std::size_t var, F &&f) const
    {
        if (var < n_)
        {
            for (auto const &e : structural_[var])
                f(e.row, e.coef);
        }
        else if (var < n_ + m_)
            f(var - n_, 1.0);
        else
            f(artRow_[var - n_ - m_], artSign_[var - n_ - m_]);
    }

    double &binv(std::size_t i, std::size_t j) { return binv_[i * m_ + j]; }

    bool refactor();
    void computeBasicValues();
    void computeDuals(std::vector<double> const &cost, std::vector<double> &y);
    double reducedCost(std::size_t var, std::vector<double> const &cost, std::vector<double> const &y) const;
    void computeColumn(std::size_t var, std::vector<double> &alpha);
    RunStatus run(std::vector<double> const &cost, int phase);
    void log(std::string const &line) const;

    std::vector<std::vector<Entry>> const &structural_;
    std::vector<double> const &rhs_;
    SimplexOptions const &options_;
    std::size_t m_;
    std::size_t n_;

    std::vector<std::size_t> artRow_;
    std::vector<double> artSign_;

    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<double> x_;
    std::vector<VarStatus> status_;
    std::vector<std::size_t> basis_;
    std::vector<double> binv_;

    std::size_t iterations_ = 0;
    std::size_t sinceRefactor_ = 0;
    std::size_t iterationLimit_ = 0;

    // Unbounded direction of the last run.
    std::size_t rayEntering_ = 0;
    double rayDirection_ = 0.0;
    std::vector<double> rayAlpha_;
};

void Engine::log(std::string const &line) const
{
    if (options_.log)
        *options_.log << line << '\n';
}

bool Engine::refactor()
{
    std::vector<double> mat(m_ * m_, 0.0);
    for (std::size_t k = 0; k != m_; ++k)
        forEachEntry(basis_[k], [&](std::size_t row, double coef) { mat[row * m_ + k] += coef; });

    binv_.assign(m_ * m_, 0.0);
    for (std::size_t i = 0; i != m_; ++i)
        binv(i, i) = 1.0;

    // Gauss-Jordan with partial pivoting; row operations are mirrored on binv_.
    for (std::size_t col = 0; col != m_; ++col)
    {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r != m_; ++r)
            if (std::abs(mat[r * m_ + col]) > std::abs(mat[pivot * m_ + col]))
                pivot = r;
        if (std::abs(mat[pivot * m_ + col]) < options_.pivotTol)
            return false;

        if (pivot != col)
            for (std::size_t c = 0; c != m_; ++c)
            {
                std::swap(mat[pivot * m_ + c], mat[col * m_ + c]);
                std::swap(binv(pivot, c), binv(col, c));
            }

        auto const inv = 1.0 / mat[col * m_ + col];
        for (std::size_t c = 0; c != m_; ++c)
        {
            mat[col * m_ + c] *= inv;
            binv(col, c) *= inv;
        }

        for (std::size_t r = 0; r != m_; ++r)
        {
            if (r == col)
                continue;
            auto const factor = mat[r * m_ + col];
            if (factor == 0.0)
                continue;
            for (std::size_t c = 0; c != m_; ++c)
            {
                mat[r * m_ + c] -= factor * mat[col * m_ + c];
                binv(r, c) -= factor * binv(col, c);
            }
        }
    }

    sinceRefactor_ = 0;
    return true;
}

void Engine::computeBasicValues()
{
    std::vector<double> residual = rhs_;
    for (std::size_t var = 0; var != x_.size(); ++var)
    {
        if (status_[var] == VarStatus::Basic || x_[var] == 0.0)
            continue;
        auto const value = x_[var];
        forEachEntry(var, [&](std::size_t row, double coef) { residual[row] -= coef * value; });
    }

    for (std::size_t i = 0; i != m_; ++i)
    {
        double value = 0.0;
        for (std::size_t r = 0; r != m_; ++r)
            value += binv(i, r) * residual[r];
        x_[basis_[i]] = value;
    }
}

void Engine::computeDuals(std::vector<double> const &cost, std::vector<double> &y)
{
    y.assign(m_, 0.0);
    for (std::size_t i = 0; i != m_; ++i)
    {
        auto const cb = cost[basis_[i]];
        if (cb == 0.0)
            continue;
        for (std::size_t r = 0; r != m_; ++r)
            y[r] += cb * binv(i, r);
    }
}

double Engine::reducedCost(std::size_t var, std::vector<double> const &cost, std::vector<double> const &y) const
{
    double d = cost[var];
    forEachEntry(var, [&](std::size_t row, double coef) { d -= y[row] * coef; });
    return d;
}

void Engine::computeColumn(std::size_t var, std::vector<double> &alpha)
{
    alpha.assign(m_, 0.0);
    forEachEntry(var, [&](std::size_t row, double coef) {
        for (std::size_t i = 0; i != m_; ++i)
            alpha[i] += binv(i, row) * coef;
    });
}

RunStatus Engine::run(std::vector<double> const &cost, int phase)
{
    auto const feasTol = options_.feasibilityTol;
    auto const optTol = options_.optimalityTol;
    auto const pivotTol = options_.pivotTol;

    std::vector<double> y;
    std::vector<double> alpha;
    std::size_t degenerateRun = 0;
    bool bland = false;

    while (true)
    {
        if (iterations_ >= iterationLimit_)
            return RunStatus::IterationLimit;

        computeDuals(cost, y);

        // Pricing.
        std::size_t entering = x_.size();
        double direction = 0.0;
        double best = 0.0;
        for (std::size_t var = 0; var != x_.size(); ++var)
        {
            auto const st = status_[var];
            if (st == VarStatus::Basic || lower_[var] == upper_[var])
                continue;

            auto const d = reducedCost(var, cost, y);
            double dir = 0.0;
            if ((st == VarStatus::AtLower || st == VarStatus::Free) && d < -optTol)
                dir = 1.0;
            else if ((st == VarStatus::AtUpper || st == VarStatus::Free) && d > optTol)
                dir = -1.0;
            if (dir == 0.0)
                continue;

            if (bland)
            {
                entering = var;
                direction = dir;
                break;
            }
            if (std::abs(d) > best)
            {
                best = std::abs(d);
                entering = var;
                direction = dir;
            }
        }

        if (entering == x_.size())
            return RunStatus::Optimal;

        computeColumn(entering, alpha);

        // Ratio test. Dantzig mode uses a Harris two-pass test, Bland mode the
        // textbook minimum ratio with lowest-index tie-break.
        auto room = [&](std::size_t i, double slack) {
            auto const var = basis_[i];
            auto const rate = -direction * alpha[i];
            if (rate < 0.0 && lower_[var] != -kInf)
                return (x_[var] - lower_[var] + slack) / -rate;
            if (rate > 0.0 && upper_[var] != kInf)
                return (upper_[var] - x_[var] + slack) / rate;
            return kInf;
        };

        std::size_t leaving = m_;
        double theta = kInf;
        if (bland)
        {
            for (std::size_t i = 0; i != m_; ++i)
            {
                if (std::abs(alpha[i]) <= pivotTol)
                    continue;
                auto const r = std::max(room(i, 0.0), 0.0);
                if (r < theta - 1e-12)
                {
                    theta = r;
                    leaving = i;
                }
                else if (r <= theta + 1e-12 && leaving != m_ && basis_[i] < basis_[leaving])
                {
                    theta = std::min(theta, r);
                    leaving = i;
                }
            }
        }
        else
        {
            double bound = kInf;
            for (std::size_t i = 0; i != m_; ++i)
                if (std::abs(alpha[i]) > pivotTol)
                    bound = std::min(bound, room(i, feasTol));

            if (bound != kInf)
            {
                double bestPivot = 0.0;
                for (std::size_t i = 0; i != m_; ++i)
                {
                    if (std::abs(alpha[i]) <= pivotTol)
                        continue;
                    auto const r = room(i, 0.0);
                    if (r <= bound && std::abs(alpha[i]) > bestPivot)
                    {
                        bestPivot = std::abs(alpha[i]);
                        leaving = i;
                        theta = std::max(r, 0.0);
                    }
                }
            }
        }

        auto const flip = upper_[entering] - lower_[entering];
        bool const bounded = lower_[entering] != -kInf && upper_[entering] != kInf;

        if (leaving == m_ && !bounded)
        {
            rayEntering_ = entering;
            rayDirection_ = direction;
            rayAlpha_ = alpha;
            return RunStatus::Unbounded;
        }

        ++iterations_;

        if (bounded && (leaving == m_ || flip <= theta))
        {
            // Bound flip; the basis is unchanged.
            for (std::size_t i = 0; i != m_; ++i)
                x_[basis_[i]] -= direction * flip * alpha[i];
            if (direction > 0)
            {
                x_[entering] = upper_[entering];
                status_[entering] = VarStatus::AtUpper;
            }
            else
            {
                x_[entering] = lower_[entering];
                status_[entering] = VarStatus::AtLower;
            }
            degenerateRun = 0;
            if (options_.log)
                log(fmt::format("phase {} iter {} flip {}", phase, iterations_, entering));
            continue;
        }

        auto const leavingVar = basis_[leaving];
        auto const leavingRate = -direction * alpha[leaving];

        for (std::size_t i = 0; i != m_; ++i)
            x_[basis_[i]] -= direction * theta * alpha[i];
        x_[entering] += direction * theta;

        if (leavingRate < 0.0)
        {
            x_[leavingVar] = lower_[leavingVar];
            status_[leavingVar] = VarStatus::AtLower;
        }
        else
        {
            x_[leavingVar] = upper_[leavingVar];
            status_[leavingVar] = VarStatus::AtUpper;
        }
        status_[entering] = VarStatus::Basic;
        basis_[leaving] = entering;

        // Product-form update of the explicit inverse.
        auto const pivot = alpha[leaving];
        for (std::size_t c = 0; c != m_; ++c)
            binv(leaving, c) /= pivot;
        for (std::size_t i = 0; i != m_; ++i)
        {
            if (i == leaving || alpha[i] == 0.0)
                continue;
            auto const factor = alpha[i];
            for (std::size_t c = 0; c != m_; ++c)
                binv(i, c) -= factor * binv(leaving, c);
        }

        if (options_.log)
            log(fmt::format("phase {} iter {} enter {} leave {} step {:.6g}{}", phase, iterations_, entering,
                            leavingVar, theta, bland ? " bland" : ""));

        if (theta <= 1e-12)
        {
            if (++degenerateRun >= options_.blandAfter && !bland)
            {
                bland = true;
                log(fmt::format("phase {} switching to Bland's rule after {} degenerate pivots", phase,
                                degenerateRun));
            }
        }
        else
            degenerateRun = 0;

        if (++sinceRefactor_ >= options_.refactorInterval)
        {
            if (!refactor())
                return RunStatus::NumericFailure;
            computeBasicValues();
        }
    }
}

LpSolution Engine::solve(IlpProblem const &problem, std::span<double const> lower, std::span<double const> upper)
{
    LpSolution result;
    result.values.assign(n_, 0.0);
    result.columnStatus.assign(n_, VarStatus::AtLower);
    result.rowStatus.assign(m_, VarStatus::Basic);
    result.duals.assign(m_, 0.0);
    result.reducedCosts.assign(n_, 0.0);

    for (std::size_t j = 0; j != n_; ++j)
        if (lower[j] > upper[j] + options_.feasibilityTol)
        {
            result.status = LpStatus::Infeasible;
            result.infeasibility = lower[j] - upper[j];
            result.message = fmt::format("column {} has empty bound interval", problem.columns[j].name);
            return result;
        }

    lower_.assign(lower.begin(), lower.end());
    upper_.assign(upper.begin(), upper.end());
    for (std::size_t j = 0; j != n_; ++j)
        upper_[j] = std::max(upper_[j], lower_[j]);

    for (auto const &row : problem.rows)
        switch (row.sense)
        {
        case Sense::LessEqual:
            lower_.push_back(0.0);
            upper_.push_back(kInf);
            break;
        case Sense::GreaterEqual:
            lower_.push_back(-kInf);
            upper_.push_back(0.0);
            break;
        case Sense::Equal:
            lower_.push_back(0.0);
            upper_.push_back(0.0);
            break;
        }

    // Start every structural column at a finite bound (or zero when free).
    x_.assign(n_ + m_, 0.0);
    status_.assign(n_ + m_, VarStatus::AtLower);
    for (std::size_t j = 0; j != n_; ++j)
    {
        if (lower_[j] != -kInf)
        {
            x_[j] = lower_[j];
            status_[j] = VarStatus::AtLower;
        }
        else if (upper_[j] != kInf)
        {
            x_[j] = upper_[j];
            status_[j] = VarStatus::AtUpper;
        }
        else
            status_[j] = VarStatus::Free;
    }

    std::vector<double> residual = rhs_;
    for (std::size_t j = 0; j != n_; ++j)
        for (auto const &e : structural_[j])
            residual[e.row] -= e.coef * x_[j];

    // Slack takes the residual when it fits its bounds; otherwise the slack
    // sits at its nearest bound and an artificial absorbs the rest.
    artRow_.clear();
    artSign_.clear();
    basis_.assign(m_, 0);
    std::vector<double> diag(m_, 1.0);
    for (std::size_t r = 0; r != m_; ++r)
    {
        auto const slack = n_ + r;
        auto const clamped = std::clamp(residual[r], lower_[slack], upper_[slack]);
        if (std::abs(residual[r] - clamped) <= options_.feasibilityTol)
        {
            x_[slack] = residual[r];
            status_[slack] = VarStatus::Basic;
            basis_[r] = slack;
            continue;
        }

        x_[slack] = clamped;
        status_[slack] = clamped == lower_[slack] ? VarStatus::AtLower : VarStatus::AtUpper;

        auto const excess = residual[r] - clamped;
        artRow_.push_back(r);
        artSign_.push_back(excess > 0 ? 1.0 : -1.0);
        lower_.push_back(0.0);
        upper_.push_back(kInf);
        x_.push_back(std::abs(excess));
        status_.push_back(VarStatus::Basic);
        basis_[r] = x_.size() - 1;
        diag[r] = artSign_.back();
    }

    binv_.assign(m_ * m_, 0.0);
    for (std::size_t r = 0; r != m_; ++r)
        binv(r, r) = 1.0 / diag[r];

    iterations_ = 0;
    sinceRefactor_ = 0;
    iterationLimit_ = options_.iterationLimit != 0 ? options_.iterationLimit : 50 * (x_.size() + m_) + 1000;

    auto const total = x_.size();
    auto const numArt = artRow_.size();

    auto finishFailure = [&](RunStatus status) {
        result.status = LpStatus::NumericFailure;
        result.iterations = iterations_;
        result.message = status == RunStatus::IterationLimit ? "iteration limit reached"
                                                             : "numerically singular basis";
        return result;
    };

    std::vector<double> y;
    if (numArt != 0)
    {
        std::vector<double> phaseOneCost(total, 0.0);
        for (std::size_t a = 0; a != numArt; ++a)
            phaseOneCost[n_ + m_ + a] = 1.0;

        auto const status = run(phaseOneCost, 1);
        if (status != RunStatus::Optimal)
            return finishFailure(status == RunStatus::Unbounded ? RunStatus::NumericFailure : status);

        if (!refactor())
            return finishFailure(RunStatus::NumericFailure);
        computeBasicValues();

        double infeasibility = 0.0;
        for (std::size_t a = 0; a != numArt; ++a)
            infeasibility += std::max(0.0, x_[n_ + m_ + a]);
        result.infeasibility = infeasibility;

        if (infeasibility > options_.feasibilityTol)
        {
            computeDuals(phaseOneCost, y);
            result.status = LpStatus::Infeasible;
            // Drop multipliers that are pure roundoff; against a free slack
            // they would spoil the certificate.
            double big = 0.0;
            for (double v : y)
                big = std::max(big, std::abs(v));
            for (double &v : y)
                if (std::abs(v) <= 1e-12 * big)
                    v = 0.0;
            result.farkas = y;
            result.iterations = iterations_;
            result.message = fmt::format("phase one ended with infeasibility {}", infeasibility);
            return result;
        }

        for (std::size_t a = 0; a != numArt; ++a)
        {
            auto const var = n_ + m_ + a;
            upper_[var] = 0.0;
            if (status_[var] != VarStatus::Basic)
            {
                x_[var] = 0.0;
                status_[var] = VarStatus::AtLower;
            }
        }
    }

    std::vector<double> cost(total, 0.0);
    for (std::size_t j = 0; j != n_; ++j)
        cost[j] = problem.columns[j].cost;

    auto const status = run(cost, 2);
    if (status == RunStatus::Unbounded)
    {
        result.status = LpStatus::Unbounded;
        result.iterations = iterations_;
        result.ray.assign(n_, 0.0);
        if (rayEntering_ < n_)
            result.ray[rayEntering_] = rayDirection_;
        for (std::size_t i = 0; i != m_; ++i)
            if (basis_[i] < n_)
                result.ray[basis_[i]] = -rayDirection_ * rayAlpha_[i];
        result.message = "objective unbounded below";
        return result;
    }
    if (status != RunStatus::Optimal)
        return finishFailure(status);

    if (!refactor())
        return finishFailure(RunStatus::NumericFailure);
    computeBasicValues();
    computeDuals(cost, y);

    result.status = LpStatus::Optimal;
    result.iterations = iterations_;
    result.duals = y;
    for (std::size_t j = 0; j != n_; ++j)
    {
        result.values[j] = x_[j];
        result.columnStatus[j] = status_[j];
        result.reducedCosts[j] = status_[j] == VarStatus::Basic ? 0.0 : reducedCost(j, cost, y);
    }
    for (std::size_t r = 0; r != m_; ++r)
        result.rowStatus[r] = status_[n_ + r];
    result.objective = problem.objective(result.values);
    return result;
}

}  // namespace

char const *label(LpStatus status)
{
    switch (status)
    {
    case LpStatus::Optimal:
        return "optimal";
    case LpStatus::Infeasible:
        return "infeasible";
    case LpStatus::Unbounded:
        return "unbounded";
    case LpStatus::NumericFailure:
        return "numeric_failure";
    }
    return "?";
}

SimplexSolver::SimplexSolver(IlpProblem const &problem, SimplexOptions options)
    : problem_(problem), options_(options)
{
    problem_.validate();

    structural_.resize(problem_.numColumns());
    rhs_.resize(problem_.numRows());
    for (std::size_t r = 0; r != problem_.numRows(); ++r)
    {
        rhs_[r] = problem_.rows[r].rhs;
        for (auto const &term : problem_.rows[r].terms)
            if (term.coef != 0.0)
                structural_[term.column].push_back({r, term.coef});
    }
}

LpSolution SimplexSolver::solve()
{
    std::vector<double> lower(problem_.numColumns());
    std::vector<double> upper(problem_.numColumns());
    for (std::size_t j = 0; j != problem_.numColumns(); ++j)
    {
        lower[j] = problem_.columns[j].lower;
        upper[j] = problem_.columns[j].upper;
    }
    return solve(lower, upper);
}

LpSolution SimplexSolver::solve(std::span<double const> lower, std::span<double const> upper)
{
    if (lower.size() != problem_.numColumns() || upper.size() != problem_.numColumns())
        throw DimensionError("bound vectors do not match the column count");

    Engine engine(structural_, rhs_, options_);
    return engine.solve(problem_, lower, upper);
}

LpSolution solveLp(IlpProblem const &problem, SimplexOptions const &options)
{
    SimplexSolver solver(problem, options);
    return solver.solve();
}

CertificateReport verifyLpCertificate(IlpProblem const &problem, LpSolution const &solution, double tol)
{
    CertificateReport report;
    auto const n = problem.numColumns();
    auto const m = problem.numRows();

    auto fail = [&](bool &flag, std::string issue) {
        flag = false;
        report.issues.push_back(std::move(issue));
    };

    if (solution.status == LpStatus::Infeasible)
    {
        for (std::size_t j = 0; j != n; ++j)
            if (problem.columns[j].lower > problem.columns[j].upper)
                return report;

        if (solution.farkas.size() != m)
        {
            fail(report.primalFeasible, "infeasible result carries no row multipliers");
            return report;
        }

        // y'b must lie outside the range y'(Ax) can reach over the column box.
        auto const &y = solution.farkas;
        std::vector<double> g(n, 0.0);
        std::vector<double> mag(n, 0.0);
        double yb = 0.0;
        double hi = 0.0;
        double lo = 0.0;
        for (std::size_t r = 0; r != m; ++r)
        {
            yb += y[r] * problem.rows[r].rhs;
            for (auto const &term : problem.rows[r].terms)
            {
                g[term.column] += y[r] * term.coef;
                mag[term.column] += std::abs(y[r] * term.coef);
            }

            // Slack s_r with Ax + s = b.
            auto const sense = problem.rows[r].sense;
            auto const sLo = sense == Sense::GreaterEqual ? -kInf : 0.0;
            auto const sHi = sense == Sense::LessEqual ? kInf : 0.0;
            if (y[r] > 0)
            {
                hi += y[r] * sHi;
                lo += y[r] * sLo;
            }
            else if (y[r] < 0)
            {
                hi += y[r] * sLo;
                lo += y[r] * sHi;
            }
        }
        for (std::size_t j = 0; j != n; ++j)
        {
            // cancellation noise against an infinite bound would swamp the test
            if (std::abs(g[j]) <= 1e-9 * mag[j])
                g[j] = 0.0;
            auto const &col = problem.columns[j];
            if (g[j] > 0)
            {
                hi += g[j] * col.upper;
                lo += g[j] * col.lower;
            }
            else if (g[j] < 0)
            {
                hi += g[j] * col.lower;
                lo += g[j] * col.upper;
            }
        }
        if (!(yb > hi + tol || yb < lo - tol))
            fail(report.primalFeasible, fmt::format("Farkas multipliers do not separate: y'b={} range=[{}, {}]",
                                                    yb, lo, hi));
        return report;
    }

    if (solution.status == LpStatus::Unbounded)
    {
        auto const &ray = solution.ray;
        if (ray.size() != n)
        {
            fail(report.dualFeasible, "unbounded result carries no ray");
            return report;
        }
        double slope = 0.0;
        for (std::size_t j = 0; j != n; ++j)
        {
            slope += problem.columns[j].cost * ray[j];
            if ((ray[j] > tol && problem.columns[j].upper != kInf)
                || (ray[j] < -tol && problem.columns[j].lower != -kInf))
                fail(report.primalFeasible, fmt::format("ray leaves the bounds of {}", problem.columns[j].name));
        }
        for (std::size_t r = 0; r != m; ++r)
        {
            double activity = 0.0;
            for (auto const &term : problem.rows[r].terms)
                activity += term.coef * ray[term.column];
            auto const sense = problem.rows[r].sense;
            if ((sense == Sense::LessEqual && activity > tol) || (sense == Sense::GreaterEqual && activity < -tol)
                || (sense == Sense::Equal && std::abs(activity) > tol))
                fail(report.primalFeasible, fmt::format("ray leaves row {}", problem.rows[r].name));
        }
        if (slope >= -tol)
            fail(report.dualFeasible, fmt::format("ray does not improve the objective (slope {})", slope));
        return report;
    }

    if (solution.status != LpStatus::Optimal)
    {
        fail(report.primalFeasible, "no certificate for a failed solve");
        return report;
    }

    auto const &x = solution.values;
    auto const &y = solution.duals;
    if (x.size() != n || y.size() != m)
    {
        fail(report.primalFeasible, "solution vectors do not match the problem");
        return report;
    }

    for (std::size_t j = 0; j != n; ++j)
    {
        auto const &col = problem.columns[j];
        if (x[j] < col.lower - tol || x[j] > col.upper + tol)
            fail(report.primalFeasible, fmt::format("{} = {} outside [{}, {}]", col.name, x[j], col.lower,
                                                    col.upper));
    }

    std::vector<double> activity(m, 0.0);
    for (std::size_t r = 0; r != m; ++r)
    {
        auto const &row = problem.rows[r];
        for (auto const &term : row.terms)
            activity[r] += term.coef * x[term.column];
        auto const gap = activity[r] - row.rhs;
        bool const ok = row.sense == Sense::LessEqual      ? gap <= tol
                        : row.sense == Sense::GreaterEqual ? gap >= -tol
                                                           : std::abs(gap) <= tol;
        if (!ok)
            fail(report.primalFeasible, fmt::format("row {} activity {} {} {}", row.name, activity[r],
                                                    label(row.sense), row.rhs));

        if ((row.sense == Sense::LessEqual && y[r] > tol) || (row.sense == Sense::GreaterEqual && y[r] < -tol))
            fail(report.dualFeasible, fmt::format("row {} dual {} has the wrong sign", row.name, y[r]));

        if (std::abs(y[r]) > tol && std::abs(gap) > tol)
            fail(report.complementary, fmt::format("row {} has dual {} but slack {}", row.name, y[r], gap));
    }

    std::vector<double> d(n);
    for (std::size_t j = 0; j != n; ++j)
        d[j] = problem.columns[j].cost;
    for (std::size_t r = 0; r != m; ++r)
        for (auto const &term : problem.rows[r].terms)
            d[term.column] -= y[r] * term.coef;

    double dualObjective = 0.0;
    for (std::size_t r = 0; r != m; ++r)
        dualObjective += y[r] * problem.rows[r].rhs;

    for (std::size_t j = 0; j != n; ++j)
    {
        auto const &col = problem.columns[j];
        if (d[j] > tol)
        {
            if (col.lower == -kInf)
                fail(report.dualFeasible, fmt::format("{} has reduced cost {} but no lower bound", col.name, d[j]));
            else if (std::abs(x[j] - col.lower) > tol)
                fail(report.complementary, fmt::format("{} has reduced cost {} away from its lower bound",
                                                       col.name, d[j]));
        }
        else if (d[j] < -tol)
        {
            if (col.upper == kInf)
                fail(report.dualFeasible, fmt::format("{} has reduced cost {} but no upper bound", col.name, d[j]));
            else if (std::abs(x[j] - col.upper) > tol)
                fail(report.complementary, fmt::format("{} has reduced cost {} away from its upper bound",
                                                       col.name, d[j]));
        }

        if (d[j] > 0 && col.lower != -kInf)
            dualObjective += d[j] * col.lower;
        else if (d[j] < 0 && col.upper != kInf)
            dualObjective += d[j] * col.upper;
    }

    report.primalObjective = problem.objective(x);
    report.dualObjective = dualObjective;
    if (std::abs(report.primalObjective - report.dualObjective) > tol)
        fail(report.strongDuality, fmt::format("primal objective {} differs from dual objective {}",
                                               report.primalObjective, report.dualObjective));
    return report;
}

}  // namespace fleetopt
