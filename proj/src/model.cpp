#include "fleetopt/model.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fmt/ranges.h>

namespace fleetopt {

namespace {

template <typename T>
void requireExtent(std::vector<T> const &values, std::size_t expected, char const *name)
{
    if (values.size() != expected)
        throw DimensionError(fmt::format("{} has {} entries, expected {}", name, values.size(), expected));
}

void requireNonNegative(std::vector<Count> const &values, char const *name)
{
    for (std::size_t k = 0; k != values.size(); ++k)
        if (values[k] < 0)
            throw InputError(fmt::format("{}[{}] = {} is negative", name, k, values[k]));
}

void requireNonNegative(std::vector<double> const &values, char const *name)
{
    for (std::size_t k = 0; k != values.size(); ++k)
        if (!std::isfinite(values[k]) || values[k] < 0)
            throw InputError(fmt::format("{}[{}] = {} is not a finite nonnegative number", name, k, values[k]));
}

void requireSameDims(Instance const &instance, Solution const &solution)
{
    if (!(instance.dims == solution.dims))
        throw DimensionError("solution dimensions do not match the instance");
    solution.validate();
}

double fleetEmissionFactor(Instance const &instance, std::size_t i, std::size_t j, std::size_t m)
{
    return instance.emissionOrg[m] * instance.distance[instance.dims.ij(i, j)];
}

double rentalEmissionFactor(Instance const &instance, std::size_t i, std::size_t j, std::size_t m)
{
    return instance.emissionRent[m] * instance.distance[instance.dims.ij(i, j)];
}

bool holds(double lhs, double rhs, Sense sense)
{
    switch (sense)
    {
    case Sense::LessEqual:
        return lhs <= rhs + kFeasTol;
    case Sense::GreaterEqual:
        return lhs >= rhs - kFeasTol;
    case Sense::Equal:
        return std::abs(lhs - rhs) <= kFeasTol;
    }
    return false;
}

// Walks every constraint of the model in a fixed order and hands each
// evaluation to `visit`. Returning false from `visit` stops the walk.
template <typename Visitor>
void forEachConstraint(Instance const &instance,
                       Solution const &solution,
                       Variant variant,
                       ModelOptions const &options,
                       Visitor &&visit)
{
    auto const &d = instance.dims;

    if (variant == Variant::Enhanced && !instance.emissionCap)
        throw ConfigError("enhanced variant requires an emission cap");

    std::vector<double> sentOrg(d.imtSize(), 0.0);
    std::vector<double> sentRent(d.imtSize(), 0.0);
    for (std::size_t i = 0; i != d.origins; ++i)
        for (std::size_t j = 0; j != d.destinations; ++j)
            for (std::size_t m = 0; m != d.modes; ++m)
                for (std::size_t t = 0; t != d.periods; ++t)
                {
                    sentOrg[d.imt(i, m, t)] += solution.x[d.ijmt(i, j, m, t)];
                    sentRent[d.imt(i, m, t)] += solution.xr[d.ijmt(i, j, m, t)];
                }

    auto emit = [&](ConstraintKind kind, std::vector<std::size_t> index, double lhs, double rhs, Sense sense) {
        return visit(kind, std::move(index), lhs, rhs, sense);
    };

    for (std::size_t i = 0; i != d.origins; ++i)
        for (std::size_t m = 0; m != d.modes; ++m)
            for (std::size_t t = 0; t != d.periods; ++t)
            {
                auto const k = d.imt(i, m, t);
                if (!emit(ConstraintKind::FleetBalance, {i, m, t}, sentOrg[k] + solution.y[k],
                          static_cast<double>(instance.fleetCap[k]), Sense::Equal))
                    return;
            }

    for (std::size_t i = 0; i != d.origins; ++i)
        for (std::size_t m = 0; m != d.modes; ++m)
            for (std::size_t t = 0; t != d.periods; ++t)
            {
                auto const k = d.imt(i, m, t);
                if (!emit(ConstraintKind::RentalBalance, {i, m, t}, sentRent[k] + solution.yr[k],
                          static_cast<double>(instance.rentalCap[k]), Sense::Equal))
                    return;
            }

    if (options.perModeDemand)
    {
        for (std::size_t j = 0; j != d.destinations; ++j)
            for (std::size_t m = 0; m != d.modes; ++m)
                for (std::size_t t = 0; t != d.periods; ++t)
                {
                    double covered = 0.0;
                    double required = 0.0;
                    for (std::size_t i = 0; i != d.origins; ++i)
                    {
                        auto const k = d.ijmt(i, j, m, t);
                        covered += static_cast<double>(solution.x[k] + solution.xr[k]);
                        required += static_cast<double>(instance.demand[k]);
                    }
                    if (!emit(ConstraintKind::Demand, {j, m, t}, covered, required, Sense::GreaterEqual))
                        return;
                }
    }
    else
    {
        for (std::size_t j = 0; j != d.destinations; ++j)
            for (std::size_t t = 0; t != d.periods; ++t)
            {
                double covered = 0.0;
                double required = 0.0;
                for (std::size_t i = 0; i != d.origins; ++i)
                    for (std::size_t m = 0; m != d.modes; ++m)
                    {
                        auto const k = d.ijmt(i, j, m, t);
                        covered += static_cast<double>(solution.x[k] + solution.xr[k]);
                        required += static_cast<double>(instance.demand[k]);
                    }
                if (!emit(ConstraintKind::Demand, {j, t}, covered, required, Sense::GreaterEqual))
                    return;
            }
    }

    if (!emit(ConstraintKind::Budget, {}, budgetUsage(instance, solution), instance.budget, Sense::LessEqual))
        return;

    for (std::size_t k = 0; k != d.imtSize(); ++k)
    {
        auto const t = k % d.periods;
        auto const m = (k / d.periods) % d.modes;
        auto const i = k / (d.periods * d.modes);
        if (!emit(ConstraintKind::FleetService, {i, m, t}, sentOrg[k], static_cast<double>(solution.q[k]),
                  Sense::LessEqual))
            return;
    }

    for (std::size_t k = 0; k != d.imtSize(); ++k)
    {
        auto const t = k % d.periods;
        auto const m = (k / d.periods) % d.modes;
        auto const i = k / (d.periods * d.modes);
        if (!emit(ConstraintKind::RentalService, {i, m, t}, sentRent[k], static_cast<double>(solution.qr[k]),
                  Sense::LessEqual))
            return;
    }

    if (options.boundService)
    {
        for (std::size_t k = 0; k != d.imtSize(); ++k)
        {
            auto const t = k % d.periods;
            auto const m = (k / d.periods) % d.modes;
            auto const i = k / (d.periods * d.modes);
            if (!emit(ConstraintKind::FleetServiceBound, {i, m, t}, static_cast<double>(solution.q[k]),
                      static_cast<double>(instance.fleetCap[k]), Sense::LessEqual))
                return;
            if (!emit(ConstraintKind::RentalServiceBound, {i, m, t}, static_cast<double>(solution.qr[k]),
                      static_cast<double>(instance.rentalCap[k]), Sense::LessEqual))
                return;
        }
    }

    if (variant == Variant::Enhanced)
        emit(ConstraintKind::EmissionCap, {}, totalEmissions(instance, solution), *instance.emissionCap,
             Sense::LessEqual);
}

}  // namespace

void Dimensions::validate() const
{
    if (origins < 1 || destinations < 1 || modes < 1 || periods < 1)
        throw DimensionError(fmt::format("dimensions {}x{}x{}x{} must all be at least 1", origins, destinations,
                                         modes, periods));
}

char const *label(Variant variant)
{
    return variant == Variant::Base ? "base" : "enhanced";
}

Variant parseVariant(std::string const &name)
{
    if (name == "base")
        return Variant::Base;
    if (name == "enhanced")
        return Variant::Enhanced;
    throw InputError("unknown variant '" + name + "' (expected base or enhanced)");
}

Instance Instance::zeros(Dimensions const &dims)
{
    dims.validate();

    Instance inst;
    inst.dims = dims;
    inst.fleetCap.assign(dims.imtSize(), 0);
    inst.rentalCap.assign(dims.imtSize(), 0);
    inst.demand.assign(dims.ijmtSize(), 0);
    inst.stopCostOrg.assign(dims.imtSize(), 0.0);
    inst.stopCostRent.assign(dims.imtSize(), 0.0);
    inst.travelCostOrg.assign(dims.ijmtSize(), 0.0);
    inst.travelCostRent.assign(dims.ijmtSize(), 0.0);
    inst.opCost.assign(dims.imtSize(), 0.0);
    inst.rentCost.assign(dims.imtSize(), 0.0);
    inst.emissionOrg.assign(dims.modes, 0.0);
    inst.emissionRent.assign(dims.modes, 0.0);
    inst.distance.assign(dims.ijSize(), 0.0);
    return inst;
}

void Instance::validate() const
{
    dims.validate();

    requireExtent(fleetCap, dims.imtSize(), "fleet_cap");
    requireExtent(rentalCap, dims.imtSize(), "rental_cap");
    requireExtent(demand, dims.ijmtSize(), "demand");
    requireExtent(stopCostOrg, dims.imtSize(), "stop_cost_org");
    requireExtent(stopCostRent, dims.imtSize(), "stop_cost_rent");
    requireExtent(travelCostOrg, dims.ijmtSize(), "travel_cost_org");
    requireExtent(travelCostRent, dims.ijmtSize(), "travel_cost_rent");
    requireExtent(opCost, dims.imtSize(), "op_cost");
    requireExtent(rentCost, dims.imtSize(), "rent_cost");
    requireExtent(emissionOrg, dims.modes, "emission_org");
    requireExtent(emissionRent, dims.modes, "emission_rent");
    requireExtent(distance, dims.ijSize(), "distance");

    requireNonNegative(fleetCap, "fleet_cap");
    requireNonNegative(rentalCap, "rental_cap");
    requireNonNegative(demand, "demand");
    requireNonNegative(stopCostOrg, "stop_cost_org");
    requireNonNegative(stopCostRent, "stop_cost_rent");
    requireNonNegative(travelCostOrg, "travel_cost_org");
    requireNonNegative(travelCostRent, "travel_cost_rent");
    requireNonNegative(opCost, "op_cost");
    requireNonNegative(rentCost, "rent_cost");
    requireNonNegative(emissionOrg, "emission_org");
    requireNonNegative(emissionRent, "emission_rent");
    requireNonNegative(distance, "distance");

    if (!std::isfinite(budget) || budget < 0)
        throw InputError(fmt::format("budget = {} is not a finite nonnegative number", budget));

    // +inf is the in-memory "no effective limit" sentinel.
    if (emissionCap && (std::isnan(*emissionCap) || *emissionCap < 0))
        throw InputError(fmt::format("emission_cap = {} must be nonnegative", *emissionCap));
}

Solution Solution::zeros(Dimensions const &dims)
{
    dims.validate();

    Solution sol;
    sol.dims = dims;
    sol.x.assign(dims.ijmtSize(), 0);
    sol.xr.assign(dims.ijmtSize(), 0);
    sol.y.assign(dims.imtSize(), 0);
    sol.yr.assign(dims.imtSize(), 0);
    sol.q.assign(dims.imtSize(), 0);
    sol.qr.assign(dims.imtSize(), 0);
    return sol;
}

void Solution::validate() const
{
    dims.validate();

    requireExtent(x, dims.ijmtSize(), "x");
    requireExtent(xr, dims.ijmtSize(), "xr");
    requireExtent(y, dims.imtSize(), "y");
    requireExtent(yr, dims.imtSize(), "yr");
    requireExtent(q, dims.imtSize(), "q");
    requireExtent(qr, dims.imtSize(), "qr");

    requireNonNegative(x, "x");
    requireNonNegative(xr, "xr");
    requireNonNegative(y, "y");
    requireNonNegative(yr, "yr");
    requireNonNegative(q, "q");
    requireNonNegative(qr, "qr");
}

char const *label(ConstraintKind kind)
{
    switch (kind)
    {
    case ConstraintKind::FleetBalance:
        return "fleet_balance";
    case ConstraintKind::RentalBalance:
        return "rental_balance";
    case ConstraintKind::Demand:
        return "demand";
    case ConstraintKind::Budget:
        return "budget";
    case ConstraintKind::FleetService:
        return "fleet_service";
    case ConstraintKind::RentalService:
        return "rental_service";
    case ConstraintKind::EmissionCap:
        return "emission_cap";
    case ConstraintKind::FleetServiceBound:
        return "fleet_service_bound";
    case ConstraintKind::RentalServiceBound:
        return "rental_service_bound";
    }
    return "?";
}

char const *label(Sense sense)
{
    switch (sense)
    {
    case Sense::LessEqual:
        return "<=";
    case Sense::GreaterEqual:
        return ">=";
    case Sense::Equal:
        return "=";
    }
    return "?";
}

std::string Violation::describe() const
{
    // Index tuples are reported 1-based, like the variable names in exports.
    std::vector<std::size_t> oneBased;
    for (auto v : index)
        oneBased.push_back(v + 1);
    return fmt::format("{}[{}]: lhs {} {} rhs {}", label(kind), fmt::join(oneBased, ","), lhs,
                       label(sense), rhs);
}

std::vector<double> objectiveTerms(Instance const &instance, Solution const &solution)
{
    requireSameDims(instance, solution);

    std::vector<double> terms(6, 0.0);
    auto const &d = instance.dims;
    for (std::size_t k = 0; k != d.ijmtSize(); ++k)
    {
        terms[0] += instance.travelCostOrg[k] * static_cast<double>(solution.x[k]);
        terms[1] += instance.travelCostRent[k] * static_cast<double>(solution.xr[k]);
    }
    for (std::size_t k = 0; k != d.imtSize(); ++k)
    {
        terms[2] += instance.stopCostOrg[k] * static_cast<double>(solution.y[k]);
        terms[3] += instance.stopCostRent[k] * static_cast<double>(solution.yr[k]);
        terms[4] += instance.opCost[k] * static_cast<double>(solution.q[k]);
        terms[5] += instance.rentCost[k] * static_cast<double>(solution.qr[k]);
    }
    return terms;
}

double evaluateObjective(Instance const &instance, Solution const &solution)
{
    auto const terms = objectiveTerms(instance, solution);
    double total = 0.0;
    for (double term : terms)
        total += term;
    return total;
}

std::vector<Violation> checkFeasible(Instance const &instance,
                                     Solution const &solution,
                                     Variant variant,
                                     ModelOptions const &options)
{
    requireSameDims(instance, solution);

    std::vector<Violation> violations;
    forEachConstraint(instance, solution, variant, options,
                      [&](ConstraintKind kind, std::vector<std::size_t> index, double lhs, double rhs, Sense sense) {
                          if (!holds(lhs, rhs, sense))
                              violations.push_back({kind, std::move(index), lhs, rhs, sense});
                          return true;
                      });
    return violations;
}

bool isFeasible(Instance const &instance, Solution const &solution, Variant variant, ModelOptions const &options)
{
    requireSameDims(instance, solution);

    bool feasible = true;
    forEachConstraint(instance, solution, variant, options,
                      [&](ConstraintKind, std::vector<std::size_t> const &, double lhs, double rhs, Sense sense) {
                          feasible = holds(lhs, rhs, sense);
                          return feasible;
                      });
    return feasible;
}

double totalEmissions(Instance const &instance, Solution const &solution)
{
    requireSameDims(instance, solution);

    auto const &d = instance.dims;
    double total = 0.0;
    for (std::size_t i = 0; i != d.origins; ++i)
        for (std::size_t j = 0; j != d.destinations; ++j)
            for (std::size_t m = 0; m != d.modes; ++m)
                for (std::size_t t = 0; t != d.periods; ++t)
                {
                    auto const k = d.ijmt(i, j, m, t);
                    total += fleetEmissionFactor(instance, i, j, m) * static_cast<double>(solution.x[k]);
                    total += rentalEmissionFactor(instance, i, j, m) * static_cast<double>(solution.xr[k]);
                }
    return total;
}

double budgetUsage(Instance const &instance, Solution const &solution)
{
    requireSameDims(instance, solution);

    double total = 0.0;
    for (std::size_t k = 0; k != instance.dims.imtSize(); ++k)
    {
        total += instance.opCost[k] * static_cast<double>(solution.q[k]);
        total += instance.rentCost[k] * static_cast<double>(solution.qr[k]);
    }
    return total;
}

double rentalShare(Solution const &solution)
{
    Count org = 0;
    Count rented = 0;
    for (auto v : solution.x)
        org += v;
    for (auto v : solution.xr)
        rented += v;
    if (org + rented == 0)
        return 0.0;
    return static_cast<double>(rented) / static_cast<double>(org + rented);
}

Solution idleSolution(Instance const &instance)
{
    auto sol = Solution::zeros(instance.dims);
    sol.y = instance.fleetCap;
    sol.yr = instance.rentalCap;
    return sol;
}

}  // namespace fleetopt
