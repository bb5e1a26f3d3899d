#include "doctest.h"
#include "fixtures.hpp"
#include "lp_oracle.hpp"

#include "fleetopt/oracle.hpp"
#include "fleetopt/simplex.hpp"

#include <random>
#include <sstream>

using namespace fleetopt;
using namespace fleetopt::test;

namespace {

IlpProblem makeLp(std::vector<double> costs, std::vector<Row> rows, double upper = kInf)
{
    IlpProblem p;
    for (std::size_t k = 0; k < costs.size(); ++k)
        p.columns.push_back({"c" + std::to_string(k), costs[k], 0.0, upper, false});
    p.rows = std::move(rows);
    return p;
}

// Random boxed LP with integer data: 2-4 columns, 1-4 rows, mixed senses.
IlpProblem randomLp(std::mt19937_64 &rng)
{
    auto draw = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); };
    IlpProblem p;
    int const n = draw(2, 4);
    for (int k = 0; k < n; ++k)
        p.columns.push_back({"c" + std::to_string(k), double(draw(-5, 5)), double(draw(-2, 0)), double(draw(1, 4)), false});
    int const m = draw(1, 4);
    for (int r = 0; r < m; ++r)
    {
        Row row;
        row.name = "r" + std::to_string(r);
        for (int k = 0; k < n; ++k)
            if (int c = draw(-3, 3); c != 0)
                row.terms.push_back({std::size_t(k), double(c)});
        int const s = draw(0, 5);
        row.sense = s < 3 ? Sense::LessEqual : s < 5 ? Sense::GreaterEqual : Sense::Equal;
        row.rhs = draw(-4, 6);
        p.rows.push_back(row);
    }
    return p;
}

}  // namespace

TEST_CASE("two-variable maximisation reaches the known vertex")
{
    // max 3x + 2y  s.t.  x + y <= 4, x + 3y <= 6
    auto p = makeLp({-3.0, -2.0},
                    {{"a", {{0, 1.0}, {1, 1.0}}, Sense::LessEqual, 4.0},
                     {"b", {{0, 1.0}, {1, 3.0}}, Sense::LessEqual, 6.0}});
    auto const sol = solveLp(p);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(-12.0));
    CHECK(sol.values[0] == doctest::Approx(4.0));
    CHECK(sol.values[1] == doctest::Approx(0.0));
    CHECK(verifyLpCertificate(p, sol).passed());

    // the oracle agrees once the box is closed
    auto boxed = p;
    for (auto &c : boxed.columns)
        c.upper = 10.0;
    auto const v = vertexOptimum(boxed);
    REQUIRE(v);
    CHECK(v->objective == doctest::Approx(-12.0));

    // <= rows carry nonpositive duals
    for (double d : sol.duals)
        CHECK(d <= 1e-9);
}

TEST_CASE("contradictory bounds are reported infeasible with a Farkas certificate")
{
    auto p = makeLp({1.0}, {{"lo", {{0, 1.0}}, Sense::GreaterEqual, 2.0}, {"hi", {{0, 1.0}}, Sense::LessEqual, 1.0}});
    auto const sol = solveLp(p);
    CHECK(sol.status == LpStatus::Infeasible);
    CHECK(sol.infeasibility > 0.0);
    REQUIRE(sol.farkas.size() == 2);
    CHECK(verifyLpCertificate(p, sol).passed());
}

TEST_CASE("an unbounded direction is reported with a ray")
{
    auto p = makeLp({-1.0}, {{"r", {{0, 1.0}}, Sense::GreaterEqual, 0.0}});
    auto const sol = solveLp(p);
    CHECK(sol.status == LpStatus::Unbounded);
    REQUIRE(sol.ray.size() == 1);
    CHECK(sol.ray[0] > 0.0);
    CHECK(verifyLpCertificate(p, sol).passed());
}

TEST_CASE("certificate check rejects a perturbed primal point")
{
    auto p = makeLp({-3.0, -2.0},
                    {{"a", {{0, 1.0}, {1, 1.0}}, Sense::LessEqual, 4.0},
                     {"b", {{0, 1.0}, {1, 3.0}}, Sense::LessEqual, 6.0}});
    auto sol = solveLp(p);
    REQUIRE(sol.status == LpStatus::Optimal);
    sol.values = {4.0, 0.5};
    auto const report = verifyLpCertificate(p, sol);
    CHECK_FALSE(report.passed());
    CHECK_FALSE(report.primalFeasible);
    CHECK_FALSE(report.issues.empty());
}

TEST_CASE("a problem with no rows and zero costs solves at its lower bounds")
{
    auto p = makeLp({0.0, 0.0}, {}, 5.0);
    auto const sol = solveLp(p);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == 0.0);
    CHECK(verifyLpCertificate(p, sol).passed());
}

TEST_CASE("equality rows and free-standing lower bounds")
{
    // min x + 2y  s.t.  x + y = 3, x <= 1, y in [-1, 5]
    IlpProblem p;
    p.columns = {{"x", 1.0, 0.0, 1.0, false}, {"y", 2.0, -1.0, 5.0, false}};
    p.rows = {{"e", {{0, 1.0}, {1, 1.0}}, Sense::Equal, 3.0}};
    auto const sol = solveLp(p);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(5.0));
    CHECK(verifyLpCertificate(p, sol).passed());
}

TEST_CASE("random boxed LPs match vertex enumeration")
{
    std::mt19937_64 rng(2024);
    int optimal = 0, infeasible = 0;
    for (int trial = 0; trial < 400; ++trial)
    {
        auto const p = randomLp(rng);
        auto const sol = solveLp(p);
        auto const v = vertexOptimum(p);
        CAPTURE(trial);
        if (v)
        {
            REQUIRE(sol.status == LpStatus::Optimal);
            CHECK(sol.objective == doctest::Approx(v->objective).epsilon(1e-9));
            ++optimal;
        }
        else
        {
            REQUIRE(sol.status == LpStatus::Infeasible);
            ++infeasible;
        }
        auto const report = verifyLpCertificate(p, sol);
        CHECK_MESSAGE(report.passed(), (report.issues.empty() ? "" : report.issues.front()));
    }
    CHECK(optimal > 50);
    CHECK(infeasible > 10);
}

TEST_CASE("strong duality holds on fleet relaxations")
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed)
    {
        auto const inst = generate(smallSpec(seed));
        for (auto variant : {Variant::Base, Variant::Enhanced})
        {
            auto capped = inst;
            if (variant == Variant::Enhanced)
                capped.emissionCap = 400.0;
            auto const built = buildIlp(capped, variant);
            auto const sol = solveLp(built.problem);
            CAPTURE(seed);
            if (sol.status == LpStatus::Optimal)
            {
                auto const report = verifyLpCertificate(built.problem, sol);
                CHECK(report.passed());
                CHECK(report.dualObjective == doctest::Approx(report.primalObjective).epsilon(1e-6));
            }
            else
            {
                CHECK(sol.status == LpStatus::Infeasible);
                auto const report = verifyLpCertificate(built.problem, sol);
                CHECK_MESSAGE(report.passed(), (report.issues.empty() ? "" : report.issues.front()));
            }
        }
    }
}

TEST_CASE("relaxation never exceeds the enumerated integer optimum")
{
    for (std::uint64_t seed = 100; seed < 140; ++seed)
    {
        auto const inst = generate(smallSpec(seed));
        auto const size = enumerationSize(inst);
        if (size.tooLarge || size.count > 20000)
            continue;
        auto const exact = bruteForceSolve(inst, Variant::Base);
        auto const lp = solveLp(buildIlp(inst, Variant::Base).problem);
        CAPTURE(seed);
        if (exact.feasible)
        {
            REQUIRE(lp.status == LpStatus::Optimal);
            CHECK(lp.objective <= exact.objective + 1e-6);
        }
    }
}

TEST_CASE("degenerate LPs solve correctly under Bland's rule")
{
    // many rows through the same vertex invite cycling
    std::mt19937_64 rng(7);
    SimplexOptions opts;
    opts.blandAfter = 1;
    int switched = 0;
    for (int trial = 0; trial < 60; ++trial)
    {
        IlpProblem p;
        int const n = 3;
        for (int k = 0; k < n; ++k)
            p.columns.push_back({"c" + std::to_string(k), -double(1 + rng() % 4), 0.0, 6.0, false});
        for (int r = 0; r < 6; ++r)
        {
            Row row{"r" + std::to_string(r), {}, Sense::LessEqual, 0.0};
            for (int k = 0; k < n; ++k)
                row.terms.push_back({std::size_t(k), double(int(rng() % 5) - 2)});
            p.rows.push_back(row);
        }
        p.rows.push_back({"cap", {{0, 1.0}, {1, 1.0}, {2, 1.0}}, Sense::LessEqual, 5.0});

        std::ostringstream log;
        opts.log = &log;
        auto const sol = SimplexSolver(p, opts).solve();
        auto const v = vertexOptimum(p);
        REQUIRE(v);
        REQUIRE(sol.status == LpStatus::Optimal);
        CHECK(sol.objective == doctest::Approx(v->objective).epsilon(1e-9));
        CHECK(verifyLpCertificate(p, sol).passed());
        if (log.str().find("Bland") != std::string::npos)
            ++switched;
    }
    CHECK(switched > 0);
}

TEST_CASE("repeated solves are bitwise identical")
{
    auto const inst = generate(GenSpec{});
    auto const built = buildIlp(inst, Variant::Base);
    SimplexSolver solver(built.problem);
    auto const a = solver.solve();
    auto const b = solver.solve();
    auto const c = solveLp(built.problem);
    CHECK(a.values == b.values);
    CHECK(a.values == c.values);
    CHECK(a.iterations == c.iterations);
    CHECK(a.objective == c.objective);
}

TEST_CASE("bound overrides tighten the relaxation")
{
    auto const built = buildIlp(tinyInstance(), Variant::Base);
    auto const &p = built.problem;
    SimplexSolver solver(p);
    std::vector<double> lo, hi;
    for (auto const &c : p.columns)
    {
        lo.push_back(c.lower);
        hi.push_back(c.upper);
    }
    auto const free = solver.solve(lo, hi);
    REQUIRE(free.status == LpStatus::Optimal);

    // forbid own-fleet trips: only the rental vehicle can serve
    auto const x = built.map.column({VarKind::X, 0, 0, 0, 0});
    hi[x] = 0.0;
    auto const forced = solver.solve(lo, hi);
    REQUIRE(forced.status == LpStatus::Optimal);
    CHECK(forced.objective >= free.objective - 1e-9);
    CHECK(forced.objective == doctest::Approx(200.0));
}
