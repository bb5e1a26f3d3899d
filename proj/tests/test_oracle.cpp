#include "doctest.h"
#include "fixtures.hpp"

#include "fleetopt/ilp.hpp"
#include "fleetopt/oracle.hpp"

#include <set>

using namespace fleetopt;
using namespace fleetopt::test;

namespace {

// Ways to give at most v trips to j destinations, counted one by one.
std::uint64_t naiveCount(std::size_t j, Count v)
{
    if (j == 0)
        return 1;
    std::uint64_t total = 0;
    for (Count k = 0; k <= v; ++k)
        total += naiveCount(j - 1, v - k);
    return total;
}

}  // namespace

TEST_CASE("enumeration sizes of hand-built instances")
{
    CHECK(enumerationSize(tinyInstance()).count == 6);

    auto empty = tinyInstance();
    empty.fleetCap = {0};
    empty.rentalCap = {0};
    CHECK(enumerationSize(empty).count == 1);

    auto two = Instance::zeros({1, 2, 1, 1});
    two.fleetCap = {1};
    two.rentalCap = {0};
    CHECK(enumerationSize(two).count == 3);

    std::uint64_t visited = 0;
    enumerateAssignments(tinyInstance(), [&](Solution const &) { ++visited; });
    CHECK(visited == 6);
}

TEST_CASE("closed-form count agrees with direct counting")
{
    for (std::size_t j = 1; j <= 4; ++j)
        for (Count v = 0; v <= 5; ++v)
            for (Count vr = 0; vr <= 3; ++vr)
            {
                auto inst = Instance::zeros({1, j, 1, 1});
                inst.fleetCap = {v};
                inst.rentalCap = {vr};
                CAPTURE(j);
                CAPTURE(v);
                CHECK(enumerationSize(inst).count == naiveCount(j, v) * naiveCount(j, vr));

                std::uint64_t visited = 0;
                enumerateAssignments(inst, [&](Solution const &) { ++visited; });
                CHECK(visited == enumerationSize(inst).count);
            }
}

TEST_CASE("enumeration visits distinct capacity-respecting points in order")
{
    auto const inst = generate(smallSpec(5));
    auto const d = inst.dims;
    std::vector<std::vector<Count>> seen;
    enumerateAssignments(inst, [&](Solution const &s) {
        for (std::size_t i = 0; i < d.origins; ++i)
            for (std::size_t m = 0; m < d.modes; ++m)
                for (std::size_t t = 0; t < d.periods; ++t)
                {
                    Count sx = 0, sr = 0;
                    for (std::size_t j = 0; j < d.destinations; ++j)
                    {
                        sx += s.x[d.ijmt(i, j, m, t)];
                        sr += s.xr[d.ijmt(i, j, m, t)];
                    }
                    auto const k = d.imt(i, m, t);
                    CHECK(s.y[k] == inst.fleetCap[k] - sx);
                    CHECK(s.yr[k] == inst.rentalCap[k] - sr);
                    CHECK(s.q[k] == sx);
                    CHECK(s.qr[k] == sr);
                }
        auto flat = s.x;
        flat.insert(flat.end(), s.xr.begin(), s.xr.end());
        seen.push_back(flat);
    });
    CHECK(seen.size() == enumerationSize(inst).count);
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    CHECK(std::set(seen.begin(), seen.end()).size() == seen.size());
}

TEST_CASE("tiny instance optima by enumeration")
{
    auto const base = bruteForceSolve(tinyInstance(), Variant::Base);
    REQUIRE(base.feasible);
    CHECK(base.objective == doctest::Approx(168.0));
    CHECK(base.enumerated == 6);
    CHECK(base.solution.x == std::vector<Count>{1});

    auto const capped = bruteForceSolve(withCap(tinyInstance(), 80.0), Variant::Enhanced);
    REQUIRE(capped.feasible);
    CHECK(capped.objective == doctest::Approx(200.0));
    CHECK(capped.solution.xr == std::vector<Count>{1});

    CHECK_FALSE(bruteForceSolve(withCap(tinyInstance(), 50.0), Variant::Enhanced).feasible);
}

TEST_CASE("extra vehicles in service never pay off")
{
    // widen the search to q, qr one above the trips sent and confirm the
    // optimum is unchanged
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 80 && checked < 15; ++seed)
    {
        auto const inst = generate(smallSpec(seed));
        auto const d = inst.dims;
        if (d.imtSize() > 2 || enumerationSize(inst).count > 5000)
            continue;
        auto const exact = bruteForceSolve(inst, Variant::Base);

        double best = kInf;
        auto const slots = 2 * d.imtSize();
        enumerateAssignments(inst, [&](Solution const &s) {
            for (std::size_t mask = 0; mask < (std::size_t(1) << slots); ++mask)
            {
                auto widened = s;
                for (std::size_t k = 0; k < d.imtSize(); ++k)
                {
                    widened.q[k] += (mask >> k) & 1;
                    widened.qr[k] += (mask >> (k + d.imtSize())) & 1;
                }
                if (isFeasible(inst, widened, Variant::Base))
                    best = std::min(best, evaluateObjective(inst, widened));
            }
        });
        CAPTURE(seed);
        CHECK(exact.feasible == (best < kInf));
        if (exact.feasible)
            CHECK(exact.objective == doctest::Approx(best).epsilon(1e-12));
        ++checked;
    }
    CHECK(checked >= 5);
}

TEST_CASE("oversized search spaces are refused")
{
    auto big = Instance::zeros({2, 5, 3, 2});
    for (auto &v : big.fleetCap)
        v = 6;
    for (auto &v : big.rentalCap)
        v = 6;
    big.budget = 1e9;
    auto const size = enumerationSize(big);
    CHECK((size.tooLarge || size.count > kDefaultEnumerationLimit));
    CHECK_THROWS_AS(bruteForceSolve(big, Variant::Base), SearchSpaceTooLarge);
    CHECK_THROWS_AS(bruteForceSolve(tinyInstance(), Variant::Base, {}, 5), SearchSpaceTooLarge);
    CHECK_NOTHROW(bruteForceSolve(tinyInstance(), Variant::Base, {}, 6));
}

TEST_CASE("size saturates instead of overflowing")
{
    auto huge = Instance::zeros({4, 8, 4, 4});
    for (auto &v : huge.fleetCap)
        v = 1000;
    auto const size = enumerationSize(huge);
    CHECK(size.tooLarge);
    CHECK(size.count == std::numeric_limits<std::uint64_t>::max());
}
