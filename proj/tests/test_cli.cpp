#include "doctest.h"
#include "fixtures.hpp"

#include "fleetopt/io.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <fmt/format.h>
#include <sys/wait.h>
#include <unistd.h>

using namespace fleetopt;
using namespace fleetopt::test;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run cli(std::string const &args)
{
    auto const command = std::string(FLEETOPT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(command.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    std::array<char, 4096> buf{};
    while (auto n = fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), n);
    int const status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(fs::path const &p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / fmt::format("fleetopt-cli-{}", ::getpid());
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string const tiny = FLEETOPT_TEST_DATA_DIR "/tiny.json";

}  // namespace

TEST_CASE("cli: solve reports the optimum and maps infeasibility to exit 3")
{
    auto const base = cli("solve " + tiny);
    CHECK(base.code == 0);
    CHECK(base.out.find("status=optimal\n") != std::string::npos);
    CHECK(base.out.find("objective=168\n") != std::string::npos);

    auto const capped = cli("solve " + tiny + " --variant enhanced --cap 80");
    CHECK(capped.code == 0);
    CHECK(capped.out.find("objective=200\n") != std::string::npos);

    auto const none = cli("solve " + tiny + " --variant enhanced --cap 50");
    CHECK(none.code == 3);
    CHECK(none.out.find("status=infeasible") != std::string::npos);
}

TEST_CASE("cli: bad input exits 2")
{
    CHECK(cli("solve /nonexistent/file.json").code == 2);
    CHECK(cli("solve " + tiny + " --variant enhanced").code == 2);
    CHECK(cli("solve " + tiny + " --variant deluxe").code == 2);
    CHECK(cli("frobnicate").code == 2);
}

TEST_CASE("cli: generate writes an instance")
{
    TempDir dir;
    auto const out = dir.path / "tx.json";
    auto const run = cli("generate --preset texas --seed 7 -o " + out.string());
    CHECK(run.code == 0);
    CHECK(run.out.find("dims I=5 J=5 M=3 T=2") != std::string::npos);
    auto const inst = readInstanceFile(out.string());
    CHECK(inst.dims.origins == 5);
    CHECK(inst.dims.modes == 3);

    // same seed, same bytes
    auto const again = dir.path / "tx2.json";
    cli("generate --preset texas --seed 7 -o " + again.string());
    CHECK(slurp(out) == slurp(again));

    auto const spec = dir.path / "spec.json";
    GenSpec gs;
    gs.dims = {1, 2, 1, 3};
    writeTextFile(spec.string(), dumpJson(toJson(gs)));
    auto const fromSpec = cli("generate --spec " + spec.string() + " --seed 4");
    CHECK(fromSpec.code == 0);
    CHECK(fromSpec.out.find("\"schema\": \"fleetopt.instance/1\"") != std::string::npos);
}

TEST_CASE("cli: output directory from the environment")
{
    TempDir dir;
    auto const run = cli("generate --seed 3 -o rel.json 2>/dev/null; FLEETOPT_OUTPUT_DIR=" + dir.path.string() + " "
                         + FLEETOPT_CLI_PATH + " generate --seed 3 -o rel.json");
    CHECK(run.code == 0);
    CHECK(fs::exists(dir.path / "rel.json"));
    fs::remove("rel.json");
}

TEST_CASE("cli: validate and oracle-check")
{
    TempDir dir;
    auto const good = dir.path / "good.json";
    writeTextFile(good.string(), dumpJson(toJson(tinyOptimum())));
    auto const ok = cli("validate " + tiny + " " + good.string());
    CHECK(ok.code == 0);
    CHECK(ok.out.find("violations=0") != std::string::npos);

    auto broken = tinyOptimum();
    broken.y = {0};
    auto const bad = dir.path / "bad.json";
    writeTextFile(bad.string(), dumpJson(toJson(broken)));
    auto const fail = cli("validate " + tiny + " " + bad.string());
    CHECK(fail.code == 1);
    CHECK(fail.out.find("fleet_balance") != std::string::npos);

    auto const agree = cli("oracle-check " + tiny);
    CHECK(agree.code == 0);
    CHECK(agree.out.find("assignments=6") != std::string::npos);
    CHECK(agree.out.find("agree=yes") != std::string::npos);
    CHECK(cli("oracle-check " + tiny + " --variant enhanced --cap 50").code == 0);
    CHECK(cli("oracle-check " + tiny + " --limit 5").code == 2);
}

TEST_CASE("cli: sweep and export-lp")
{
    auto const sweep = cli("sweep " + tiny + " --caps 80,inf,70");
    CHECK(sweep.code == 0);
    CHECK(sweep.out.rfind("cap,status,objective,emissions,rental_share,nodes\n70,optimal,200,", 0) == 0);
    CHECK(sweep.out.find("\ninf,optimal,168,") != std::string::npos);

    auto const grid = cli("sweep " + tiny + " -n 2");
    CHECK(grid.out.find("\n70,optimal,200,") != std::string::npos);
    CHECK(grid.out.find("\n100,optimal,168,") != std::string::npos);
    CHECK(cli("sweep " + tiny).code == 2);

    auto const lp = cli("export-lp " + tiny);
    CHECK(lp.code == 0);
    CHECK(lp.out == slurp(FLEETOPT_TEST_DATA_DIR "/tiny_base.lp"));
}

TEST_CASE("cli: long CSV input")
{
    TempDir dir;
    auto const csv = dir.path / "tiny.csv";
    writeTextFile(csv.string(),
                  "parameter,i,j,m,t,value\ndims,1,1,1,1,\nfleet_cap,1,,1,1,2\nrental_cap,1,,1,1,1\n"
                  "demand,1,1,1,1,1\nstop_cost_org,1,,1,1,10\nstop_cost_rent,1,,1,1,8\n"
                  "travel_cost_org,1,1,1,1,100\ntravel_cost_rent,1,1,1,1,120\nop_cost,1,,1,1,50\n"
                  "rent_cost,1,,1,1,60\nemission_org,,,1,,1\nemission_rent,,,1,,0.7\ndistance,1,1,,,100\n"
                  "budget,,,,,1000\n");
    auto const run = cli("solve " + csv.string());
    CHECK(run.code == 0);
    CHECK(run.out.find("objective=168\n") != std::string::npos);
}

TEST_CASE("cli: remaining subcommand behaviours")
{
    TempDir dir;

    // solution shaped for a different instance
    auto const wrong = dir.path / "wrong.json";
    writeTextFile(wrong.string(), dumpJson(toJson(Solution::zeros({2, 1, 1, 1}))));
    CHECK(cli("validate " + tiny + " " + wrong.string()).code == 2);

    // all ranges collapsed: every entry takes the range value
    auto const spec = dir.path / "degenerate.json";
    writeTextFile(spec.string(),
                  R"({"dims": {"I": 1, "J": 2, "M": 1, "T": 1}, "fleet_cap": [2, 2], "rental_cap": [1, 1],
                      "demand": [1, 1], "op_cost": [60, 60], "distance": [80, 80]})");
    auto const out = dir.path / "deg.json";
    REQUIRE(cli("generate --spec " + spec.string() + " -o " + out.string()).code == 0);
    auto const inst = readInstanceFile(out.string());
    CHECK(inst.fleetCap == std::vector<Count>{2});
    CHECK(inst.demand == std::vector<Count>{1, 1});
    CHECK(inst.distance == std::vector<double>{80.0, 80.0});
    CHECK(inst.opCost == std::vector<double>{60.0});

    // zero demand: both sides settle on the idle cost 10*2 + 8*1
    auto idle = tinyInstance();
    idle.demand = {0};
    auto const idleFile = dir.path / "idle.json";
    writeTextFile(idleFile.string(), dumpJson(toJson(idle)));
    auto const check = cli("oracle-check " + idleFile.string());
    CHECK(check.code == 0);
    CHECK(check.out.find("oracle_objective=28\n") != std::string::npos);
    CHECK(check.out.find("solver_objective=28\n") != std::string::npos);
    CHECK(cli("oracle-check " + tiny + " --variant enhanced --cap 80").out.find("agree=yes") != std::string::npos);

    auto countRows = [](std::string const &lp) {
        auto const begin = lp.find("Subject To\n");
        auto const end = lp.find("Bounds\n");
        auto const body = lp.substr(begin, end - begin);
        return std::count(body.begin(), body.end(), ':');
    };
    auto const baseLp = cli("export-lp " + tiny).out;
    auto const capLp = cli("export-lp " + tiny + " --variant enhanced --cap 80").out;
    CHECK(countRows(capLp) == countRows(baseLp) + 1);

    auto const ladder = cli("sweep " + tiny + " --caps 70,80,100");
    CHECK(ladder.out.find("\n70,optimal,200,") != std::string::npos);
    CHECK(ladder.out.find("\n80,optimal,200,") != std::string::npos);
    CHECK(ladder.out.find("\n100,optimal,168,") != std::string::npos);

    auto const open = cli("sweep " + tiny + " --caps inf");
    CHECK(open.out.find("\ninf,optimal,168,100,0,") != std::string::npos);
}
