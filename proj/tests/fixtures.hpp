#pragma once

#include "fleetopt/generator.hpp"
#include "fleetopt/model.hpp"

#include <random>

namespace fleetopt::test {

// One origin, destination, mode and period; two owned vehicles and one
// rental, one trip demanded over a 100 km route.
inline Instance tinyInstance()
{
    auto inst = Instance::zeros({1, 1, 1, 1});
    inst.fleetCap = {2};
    inst.rentalCap = {1};
    inst.demand = {1};
    inst.stopCostOrg = {10.0};
    inst.stopCostRent = {8.0};
    inst.travelCostOrg = {100.0};
    inst.travelCostRent = {120.0};
    inst.opCost = {50.0};
    inst.rentCost = {60.0};
    inst.budget = 1000.0;
    inst.emissionOrg = {1.0};
    inst.emissionRent = {0.7};
    inst.distance = {100.0};
    return inst;
}

inline Instance withCap(Instance inst, double cap)
{
    inst.emissionCap = cap;
    return inst;
}

// x = 1, y = 1, yr = 1, q = 1.
inline Solution tinyOptimum()
{
    auto sol = Solution::zeros({1, 1, 1, 1});
    sol.x = {1};
    sol.y = {1};
    sol.yr = {1};
    sol.q = {1};
    return sol;
}

// Small random instance whose oracle search space stays enumerable.
inline GenSpec smallSpec(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
    };

    GenSpec spec;
    spec.seed = seed;
    spec.dims = {pick(1, 2), pick(1, 2), pick(1, 2), pick(1, 2)};
    spec.fleetCap = {0, static_cast<Count>(pick(1, 3))};
    spec.rentalCap = {0, static_cast<Count>(pick(1, 3))};
    spec.demand = {0, 1};
    return spec;
}

inline Solution randomAssignment(Dimensions const &d, std::mt19937_64 &rng, Count maxValue)
{
    auto sol = Solution::zeros(d);
    auto fill = [&](std::vector<Count> &v) {
        for (auto &e : v)
            e = static_cast<Count>(rng() % static_cast<std::uint64_t>(maxValue + 1));
    };
    fill(sol.x);
    fill(sol.xr);
    fill(sol.y);
    fill(sol.yr);
    fill(sol.q);
    fill(sol.qr);
    return sol;
}

}  // namespace fleetopt::test
