#include "fleetopt/analysis.hpp"

#include "fleetopt/ilp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fmt/format.h>
#include <thread>

namespace fleetopt {

namespace {

std::string formatCap(double cap)
{
    return std::isinf(cap) ? std::string("inf") : fmt::format("{}", cap);
}

}  // namespace

ModelSolve solveModel(Instance const &instance, Variant variant, SolveParams const &params, ModelOptions const &options)
{
    auto const built = buildIlp(instance, variant, options);
    auto const result = solveIlp(built.problem, params);

    ModelSolve out;
    out.status = result.status;
    out.nodes = result.nodes;
    out.message = result.message;
    if (result.hasIncumbent())
    {
        auto sol = extractSolution(result.values, built.map);
        out.objective = evaluateObjective(instance, sol);
        out.emissions = totalEmissions(instance, sol);
        out.budgetUsed = budgetUsage(instance, sol);
        out.rentalShare = rentalShare(sol);
        out.solution = std::move(sol);
    }
    return out;
}

std::optional<double> minEmissions(Instance const &instance, SolveParams const &params, ModelOptions const &options)
{
    auto built = buildIlp(instance, Variant::Base, options);

    for (auto &col : built.problem.columns)
        col.cost = 0.0;
    auto const &d = instance.dims;
    for (std::size_t i = 0; i != d.origins; ++i)
        for (std::size_t j = 0; j != d.destinations; ++j)
            for (std::size_t m = 0; m != d.modes; ++m)
                for (std::size_t t = 0; t != d.periods; ++t)
                {
                    auto const km = instance.distance[d.ij(i, j)];
                    built.problem.columns[built.map.column({VarKind::X, i, j, m, t})].cost = instance.emissionOrg[m] * km;
                    built.problem.columns[built.map.column({VarKind::XR, i, j, m, t})].cost = instance.emissionRent[m] * km;
                }

    auto const result = solveIlp(built.problem, params);
    if (result.status == IlpStatus::Infeasible)
        return std::nullopt;
    if (result.status != IlpStatus::Optimal)
        throw SolverError(fmt::format("emission minimisation ended with status {}: {}", label(result.status),
                                      result.message));

    return totalEmissions(instance, extractSolution(result.values, built.map));
}

std::vector<double> capGrid(Instance const &instance, std::size_t count, SolveParams const &params,
                            ModelOptions const &options)
{
    if (count < 2)
        throw InputError("a cap grid needs at least two points");

    auto const base = solveModel(instance, Variant::Base, params, options);
    if (base.status != IlpStatus::Optimal)
        throw SolverError(fmt::format("uncapped model ended with status {}", label(base.status)));

    auto const floor = minEmissions(instance, params, options);
    if (!floor)
        throw SolverError("uncapped model is infeasible");

    auto const lo = std::min(*floor, base.emissions);
    auto const hi = base.emissions;
    std::vector<double> caps(count);
    for (std::size_t k = 0; k != count; ++k)
        caps[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
    caps.front() = lo;
    caps.back() = hi;
    return caps;
}

SweepResult sweepEmissionCap(Instance const &instance,
                             std::vector<double> caps,
                             SolveParams const &params,
                             ModelOptions const &options,
                             unsigned threads)
{
    if (caps.empty())
        throw InputError("sweep needs at least one cap");
    for (auto cap : caps)
        if (std::isnan(cap) || cap < 0)
            throw InputError(fmt::format("cap {} must be nonnegative", cap));
    std::sort(caps.begin(), caps.end());

    SweepResult result;
    auto const base = solveModel(instance, Variant::Base, params, options);
    if (base.status != IlpStatus::Optimal)
        throw SolverError(fmt::format("uncapped model ended with status {}", label(base.status)));
    result.baseObjective = base.objective;
    result.baseEmissions = base.emissions;
    result.baseRentalShare = base.rentalShare;

    result.rows.resize(caps.size());
    auto solveRow = [&](std::size_t k) {
        auto capped = instance;
        capped.emissionCap = caps[k];
        auto &row = result.rows[k];
        row.cap = caps[k];
        try
        {
            auto const solve = solveModel(capped, Variant::Enhanced, params, options);
            row.status = solve.status;
            row.nodes = solve.nodes;
            row.message = solve.message;
            if (solve.solution)
            {
                row.objective = solve.objective;
                row.emissions = solve.emissions;
                row.rentalShare = solve.rentalShare;
            }
        }
        catch (std::exception const &e)
        {
            row.status = IlpStatus::SolverError;
            row.message = e.what();
        }
    };

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(caps.size())));
    if (threads == 1)
    {
        for (std::size_t k = 0; k != caps.size(); ++k)
            solveRow(k);
    }
    else
    {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w != threads; ++w)
            pool.emplace_back([&] {
                for (auto k = next++; k < caps.size(); k = next++)
                    solveRow(k);
            });
    }

    double sum = 0.0;
    std::size_t feasible = 0;
    for (auto const &row : result.rows)
    {
        if (!row.feasible())
            continue;
        if (!result.minFeasibleCap)
            result.minFeasibleCap = row.cap;
        if (result.baseObjective > 0)
        {
            sum += costDeltaPercent(result.baseObjective, row.objective);
            ++feasible;
        }
    }
    if (feasible != 0)
        result.meanCostIncreasePct = sum / static_cast<double>(feasible);
    return result;
}

double costDeltaPercent(double baseObjective, double enhancedObjective)
{
    if (!(baseObjective > 0))
        throw InputError("base objective must be positive");
    return 100.0 * (enhancedObjective - baseObjective) / baseObjective;
}

std::string sweepCsv(SweepResult const &result)
{
    std::string out = "cap,status,objective,emissions,rental_share,nodes\n";
    for (auto const &row : result.rows)
    {
        if (row.feasible())
            out += fmt::format("{},{},{},{},{},{}\n", formatCap(row.cap), label(row.status), row.objective,
                               row.emissions, row.rentalShare, row.nodes);
        else
            out += fmt::format("{},{},,,,{}\n", formatCap(row.cap), label(row.status), row.nodes);
    }
    out += fmt::format("# base_objective={}\n", result.baseObjective);
    out += fmt::format("# base_emissions={}\n", result.baseEmissions);
    out += fmt::format("# base_rental_share={}\n", result.baseRentalShare);
    out += fmt::format("# mean_cost_increase_pct={}\n",
                       result.meanCostIncreasePct ? fmt::format("{}", *result.meanCostIncreasePct) : "");
    out += fmt::format("# min_feasible_cap={}\n",
                       result.minFeasibleCap ? formatCap(*result.minFeasibleCap) : "");
    return out;
}

}  // namespace fleetopt
