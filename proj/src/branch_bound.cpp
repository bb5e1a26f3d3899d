#include "fleetopt/branch_bound.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <ostream>
#include <queue>

namespace fleetopt {

namespace {

struct Node {
    std::size_t id;
    std::size_t depth;
    double bound;  // relaxation value of the parent
    std::vector<double> lower;
    std::vector<double> upper;
};

struct NodeOrder {
    bool operator()(Node const &a, Node const &b) const
    {
        // std::priority_queue pops the largest element; invert for min-first.
        if (a.bound != b.bound)
            return a.bound > b.bound;
        return a.id > b.id;
    }
};

}  // namespace

void SolveParams::validate() const
{
    if (!(integralityTol > 0) || !(absoluteGapTol > 0) || !(relativeGapTol > 0))
        throw ConfigError("solver tolerances must be positive");
    if (timeLimitSeconds && !(*timeLimitSeconds > 0))
        throw ConfigError("time limit must be positive");
}

char const *label(IlpStatus status)
{
    switch (status)
    {
    case IlpStatus::Optimal:
        return "optimal";
    case IlpStatus::Infeasible:
        return "infeasible";
    case IlpStatus::Unbounded:
        return "unbounded";
    case IlpStatus::NodeLimit:
        return "node_limit";
    case IlpStatus::TimeLimit:
        return "time_limit";
    case IlpStatus::SolverError:
        return "solver_error";
    }
    return "?";
}

IlpResult solveIlp(IlpProblem const &problem, SolveParams const &params)
{
    params.validate();
    problem.validate();

    using Clock = std::chrono::steady_clock;
    auto const start = Clock::now();

    auto const n = problem.numColumns();
    SimplexSolver lp(problem, params.lp);

    IlpResult result;
    double prunedBound = kInf;

    auto pruneTol = [&] {
        return std::max(params.absoluteGapTol, params.relativeGapTol * std::abs(result.objective));
    };

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    {
        Node root{0, 0, -kInf, std::vector<double>(n), std::vector<double>(n)};
        for (std::size_t j = 0; j != n; ++j)
        {
            root.lower[j] = problem.columns[j].lower;
            root.upper[j] = problem.columns[j].upper;
        }
        open.push(std::move(root));
    }
    std::size_t nextId = 1;

    auto finishWithLimit = [&](IlpStatus status) {
        result.status = status;
        double bound = std::min(prunedBound, result.objective);
        while (!open.empty())
        {
            bound = std::min(bound, open.top().bound);
            open.pop();
        }
        result.bestBound = bound;
        result.gap = result.hasIncumbent() ? result.objective - bound : kInf;
        return result;
    };

    while (!open.empty())
    {
        if (params.nodeLimit && result.nodes >= *params.nodeLimit)
            return finishWithLimit(IlpStatus::NodeLimit);
        if (params.timeLimitSeconds
            && std::chrono::duration<double>(Clock::now() - start).count() >= *params.timeLimitSeconds)
            return finishWithLimit(IlpStatus::TimeLimit);

        Node node = open.top();
        open.pop();

        if (result.hasIncumbent() && node.bound >= result.objective - pruneTol())
        {
            prunedBound = std::min(prunedBound, node.bound);
            continue;
        }

        auto const relaxation = lp.solve(node.lower, node.upper);
        ++result.nodes;
        result.lpIterations += relaxation.iterations;

        if (relaxation.status == LpStatus::NumericFailure)
        {
            result.status = IlpStatus::SolverError;
            result.message = fmt::format("relaxation failed at node {} (depth {}): {}", node.id, node.depth,
                                         relaxation.message);
            return result;
        }
        if (relaxation.status == LpStatus::Infeasible)
            continue;
        if (relaxation.status == LpStatus::Unbounded)
        {
            result.status = node.id == 0 ? IlpStatus::Unbounded : IlpStatus::SolverError;
            result.message = fmt::format("relaxation unbounded at node {}", node.id);
            return result;
        }

        auto const bound = relaxation.objective;
        // A child's relaxation can only tighten its parent's.
        assert(node.id == 0 || bound >= node.bound - 1e-6 * std::max(1.0, std::abs(node.bound)));

        std::size_t branchColumn = n;
        double bestDistance = kInf;
        std::size_t fractional = 0;
        for (std::size_t j = 0; j != n; ++j)
        {
            if (!problem.columns[j].integer)
                continue;
            auto const v = relaxation.values[j];
            auto const frac = v - std::floor(v);
            if (std::min(frac, 1.0 - frac) <= params.integralityTol)
                continue;
            ++fractional;
            auto const distance = std::abs(frac - 0.5);
            if (distance < bestDistance)
            {
                bestDistance = distance;
                branchColumn = j;
            }
        }

        if (params.nodeLog)
            *params.nodeLog << fmt::format("node {} bound {:.10g} depth {} fractional {}\n", node.id, bound,
                                           node.depth, fractional);

        if (result.hasIncumbent() && bound >= result.objective - pruneTol())
        {
            prunedBound = std::min(prunedBound, bound);
            continue;
        }

        if (branchColumn == n)
        {
            auto candidate = relaxation.values;
            for (std::size_t j = 0; j != n; ++j)
                if (problem.columns[j].integer)
                    candidate[j] = std::round(candidate[j]);

            if (!problem.satisfies(candidate, kFeasTol))
            {
                if (params.nodeLog)
                    *params.nodeLog << fmt::format("node {} snapped point fails recheck\n", node.id);
                continue;
            }

            auto const value = problem.objective(candidate);
            if (!result.hasIncumbent() || value < result.objective)
            {
                result.values = std::move(candidate);
                result.objective = value;
                if (params.nodeLog)
                    *params.nodeLog << fmt::format("node {} incumbent {:.10g}\n", node.id, value);
            }
            continue;
        }

        auto const v = relaxation.values[branchColumn];
        Node down{nextId++, node.depth + 1, bound, node.lower, node.upper};
        down.upper[branchColumn] = std::floor(v);
        Node up{nextId++, node.depth + 1, bound, std::move(node.lower), std::move(node.upper)};
        up.lower[branchColumn] = std::ceil(v);
        open.push(std::move(down));
        open.push(std::move(up));
    }

    if (!result.hasIncumbent())
    {
        result.status = IlpStatus::Infeasible;
        result.message = "no integer point satisfies every row and bound";
        return result;
    }

    result.status = IlpStatus::Optimal;
    result.bestBound = std::min(prunedBound, result.objective);
    result.gap = result.objective - result.bestBound;
    return result;
}

}  // namespace fleetopt
