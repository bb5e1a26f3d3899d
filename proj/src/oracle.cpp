#include "fleetopt/oracle.hpp"

#include <fmt/format.h>
#include <limits>

namespace fleetopt {

namespace {

constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();

// C(capacity + bins, bins), saturating at kMax.
std::uint64_t distributions(Count capacity, std::size_t bins, bool &overflow)
{
    unsigned __int128 value = 1;
    for (std::size_t k = 1; k <= bins; ++k)
    {
        value = value * static_cast<unsigned __int128>(capacity + static_cast<Count>(k)) / k;
        if (value > kMax)
        {
            overflow = true;
            return kMax;
        }
    }
    return static_cast<std::uint64_t>(value);
}

std::uint64_t saturatingMultiply(std::uint64_t a, std::uint64_t b, bool &overflow)
{
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
    {
        overflow = true;
        return kMax;
    }
    return out;
}

}  // namespace

EnumerationSize enumerationSize(Instance const &instance)
{
    instance.validate();

    EnumerationSize size{1, false};
    auto const bins = instance.dims.destinations;
    for (std::size_t k = 0; k != instance.dims.imtSize(); ++k)
    {
        size.count = saturatingMultiply(size.count, distributions(instance.fleetCap[k], bins, size.tooLarge),
                                        size.tooLarge);
        size.count = saturatingMultiply(size.count, distributions(instance.rentalCap[k], bins, size.tooLarge),
                                        size.tooLarge);
    }
    return size;
}

SearchSpaceTooLarge::SearchSpaceTooLarge(EnumerationSize size_)
    : std::runtime_error(size_.tooLarge ? std::string("search space exceeds 2^64 assignments")
                                        : fmt::format("search space has {} assignments", size_.count)),
      size(size_)
{
}

void enumerateAssignments(Instance const &instance, std::function<void(Solution const &)> const &visit)
{
    instance.validate();

    auto const &d = instance.dims;
    auto sol = Solution::zeros(d);
    auto const route = d.ijmtSize();

    // Remaining capacity per (i,m,t), for the fleet and the rental pool.
    std::vector<Count> leftOrg = instance.fleetCap;
    std::vector<Count> leftRent = instance.rentalCap;

    // Position p < route addresses x[p], otherwise xr[p - route]; both use the
    // (i,j,m,t) flat layout, so the (i,m,t) block follows from p directly.
    auto blockOf = [&](std::size_t p) {
        auto const t = p % d.periods;
        auto const m = (p / d.periods) % d.modes;
        auto const i = p / (d.periods * d.modes * d.destinations);
        return d.imt(i, m, t);
    };

    auto leaf = [&] {
        for (std::size_t k = 0; k != d.imtSize(); ++k)
        {
            sol.q[k] = instance.fleetCap[k] - leftOrg[k];
            sol.qr[k] = instance.rentalCap[k] - leftRent[k];
            sol.y[k] = leftOrg[k];
            sol.yr[k] = leftRent[k];
        }
        visit(sol);
    };

    std::function<void(std::size_t)> descend = [&](std::size_t p) {
        if (p == 2 * route)
        {
            leaf();
            return;
        }

        bool const rental = p >= route;
        auto const local = rental ? p - route : p;
        auto &left = rental ? leftRent : leftOrg;
        auto &slot = rental ? sol.xr[local] : sol.x[local];
        auto const block = blockOf(local);

        auto const available = left[block];
        for (Count v = 0; v <= available; ++v)
        {
            slot = v;
            left[block] = available - v;
            descend(p + 1);
        }
        slot = 0;
        left[block] = available;
    };

    descend(0);
}

OracleResult bruteForceSolve(Instance const &instance,
                             Variant variant,
                             ModelOptions const &options,
                             std::uint64_t limit)
{
    auto const size = enumerationSize(instance);
    if (size.tooLarge || size.count > limit)
        throw SearchSpaceTooLarge(size);
    if (variant == Variant::Enhanced && !instance.emissionCap)
        throw ConfigError("enhanced variant requires an emission cap");

    OracleResult best;
    enumerateAssignments(instance, [&](Solution const &candidate) {
        ++best.enumerated;
        if (!isFeasible(instance, candidate, variant, options))
            return;
        auto const value = evaluateObjective(instance, candidate);
        if (!best.feasible || value < best.objective - 1e-9)
        {
            best.feasible = true;
            best.solution = candidate;
            best.objective = value;
        }
    });
    return best;
}

}  // namespace fleetopt
