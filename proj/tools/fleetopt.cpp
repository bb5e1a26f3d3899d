// Command-line front end: generate, solve, sweep, validate, oracle-check and
// export-lp. Exit codes: 0 ok, 1 validation failure, 2 input error,
// 3 infeasible, 4 numeric failure.

#include "fleetopt/analysis.hpp"
#include "fleetopt/generator.hpp"
#include "fleetopt/ilp.hpp"
#include "fleetopt/io.hpp"
#include "fleetopt/oracle.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fmt/format.h>
#include <iostream>
#include <optional>
#include <string>

using namespace fleetopt;

namespace {

enum Exit : int { Ok = 0, ValidationFailed = 1, BadInput = 2, Infeasible = 3, NumericFailure = 4 };

struct RunConfig {
    std::string instancePath;
    std::string solutionPath;
    std::string specPath;
    std::string preset;
    std::string output;
    std::string variant = "base";
    std::optional<double> cap;
    std::string caps;
    std::size_t gridSize = 0;
    std::uint64_t seed = 0;
    bool seedGiven = false;
    std::size_t periods = 2;
    std::optional<std::size_t> nodeLimit;
    std::optional<double> timeLimit;
    std::uint64_t enumerationLimit = kDefaultEnumerationLimit;
    unsigned threads = 1;
    bool perModeDemand = false;
    bool boundService = false;
    int verbosity = 0;
};

std::string resolveOutput(std::string const &path)
{
    namespace fs = std::filesystem;
    if (path.empty() || fs::path(path).is_absolute())
        return path;
    if (char const *dir = std::getenv("FLEETOPT_OUTPUT_DIR"); dir && *dir)
        return (fs::path(dir) / path).string();
    return path;
}

// Writes to the resolved output path, or stdout when no path was given.
void emit(RunConfig const &cfg, std::string const &text)
{
    auto const path = resolveOutput(cfg.output);
    if (path.empty())
        std::cout << text;
    else
        writeTextFile(path, text);
}

Instance loadInstance(RunConfig const &cfg)
{
    auto const ext = std::filesystem::path(cfg.instancePath).extension().string();
    auto inst = ext == ".csv" ? loadLongCsvFile(cfg.instancePath) : readInstanceFile(cfg.instancePath);
    if (cfg.cap)
        inst.emissionCap = *cfg.cap;
    return inst;
}

ModelOptions modelOptions(RunConfig const &cfg)
{
    ModelOptions opts;
    opts.perModeDemand = cfg.perModeDemand;
    opts.boundService = cfg.boundService;
    return opts;
}

SolveParams solveParams(RunConfig const &cfg)
{
    SolveParams params;
    params.nodeLimit = cfg.nodeLimit;
    params.timeLimitSeconds = cfg.timeLimit;
    if (cfg.verbosity >= 1)
        params.nodeLog = &std::cerr;
    if (cfg.verbosity >= 2)
        params.lp.log = &std::cerr;
    return params;
}

double parseCap(std::string const &text)
{
    if (text == "inf" || text == "+inf")
        return kInf;
    try
    {
        std::size_t used = 0;
        auto const value = std::stod(text, &used);
        if (used != text.size())
            throw std::invalid_argument(text);
        return value;
    }
    catch (std::exception const &)
    {
        throw InputError("bad cap value '" + text + "'");
    }
}

int cmdGenerate(RunConfig const &cfg)
{
    Instance inst;
    std::uint64_t seed = cfg.seed;
    if (cfg.preset == "texas")
        inst = texasPreset(cfg.seed, cfg.periods);
    else if (!cfg.preset.empty())
        throw InputError("unknown preset '" + cfg.preset + "'");
    else
    {
        GenSpec spec;
        if (!cfg.specPath.empty())
            spec = genSpecFromJson(readJsonFile(cfg.specPath));
        if (cfg.seedGiven)
            spec.seed = cfg.seed;
        seed = spec.seed;
        try
        {
            inst = generate(spec);
        }
        catch (ConfigError const &e)
        {
            throw InputError(e.what());
        }
    }

    emit(cfg, dumpJson(toJson(inst)));
    auto const &d = inst.dims;
    (cfg.output.empty() ? std::cerr : std::cout)
        << fmt::format("dims I={} J={} M={} T={} seed={}\n", d.origins, d.destinations, d.modes, d.periods, seed);
    return Ok;
}

int cmdSolve(RunConfig const &cfg)
{
    auto const inst = loadInstance(cfg);
    auto const variant = parseVariant(cfg.variant);
    auto const result = solveModel(inst, variant, solveParams(cfg), modelOptions(cfg));

    std::cout << fmt::format("status={}\n", label(result.status));
    if (result.solution)
    {
        std::cout << fmt::format("objective={}\nemissions={}\nbudget_used={}\nrental_share={}\n", result.objective,
                                 result.emissions, result.budgetUsed, result.rentalShare);
        if (!cfg.output.empty())
            writeTextFile(resolveOutput(cfg.output), dumpJson(toJson(*result.solution)));
    }
    std::cout << fmt::format("nodes={}\n", result.nodes);
    if (!result.message.empty() && result.status != IlpStatus::Optimal)
        std::cerr << result.message << '\n';

    switch (result.status)
    {
    case IlpStatus::Optimal:
        return Ok;
    case IlpStatus::Infeasible:
        return Infeasible;
    case IlpStatus::NodeLimit:
    case IlpStatus::TimeLimit:
        return result.solution ? Ok : NumericFailure;
    default:
        return NumericFailure;
    }
}

int cmdSweep(RunConfig const &cfg)
{
    auto const inst = loadInstance(cfg);
    auto const params = solveParams(cfg);
    auto const opts = modelOptions(cfg);

    std::vector<double> caps;
    if (!cfg.caps.empty())
    {
        std::size_t start = 0;
        while (start <= cfg.caps.size())
        {
            auto const comma = cfg.caps.find(',', start);
            auto const token = cfg.caps.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            caps.push_back(parseCap(token));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
    }
    else if (cfg.gridSize >= 2)
        caps = capGrid(inst, cfg.gridSize, params, opts);
    else
        throw InputError("sweep needs either --caps or -n N with N >= 2");

    auto const result = sweepEmissionCap(inst, caps, params, opts, cfg.threads);
    emit(cfg, sweepCsv(result));
    return Ok;
}

int cmdValidate(RunConfig const &cfg)
{
    auto const inst = loadInstance(cfg);
    auto const sol = readSolutionFile(cfg.solutionPath);
    auto const violations = checkFeasible(inst, sol, parseVariant(cfg.variant), modelOptions(cfg));
    for (auto const &v : violations)
        std::cout << v.describe() << '\n';
    std::cout << fmt::format("violations={}\nobjective={}\n", violations.size(), evaluateObjective(inst, sol));
    return violations.empty() ? Ok : ValidationFailed;
}

int cmdOracleCheck(RunConfig const &cfg)
{
    auto const inst = loadInstance(cfg);
    auto const variant = parseVariant(cfg.variant);
    auto const opts = modelOptions(cfg);

    auto const size = enumerationSize(inst);
    if (size.tooLarge || size.count > cfg.enumerationLimit)
    {
        std::cerr << fmt::format("refusing: search space {} exceeds the limit {}\n",
                                 size.tooLarge ? std::string(">2^64") : std::to_string(size.count),
                                 cfg.enumerationLimit);
        return BadInput;
    }

    auto const oracle = bruteForceSolve(inst, variant, opts, cfg.enumerationLimit);
    auto const solver = solveModel(inst, variant, solveParams(cfg), opts);

    std::cout << fmt::format("assignments={}\n", oracle.enumerated);
    std::cout << fmt::format("oracle_status={}\n", oracle.feasible ? "optimal" : "infeasible");
    if (oracle.feasible)
        std::cout << fmt::format("oracle_objective={}\n", oracle.objective);
    std::cout << fmt::format("solver_status={}\n", label(solver.status));
    if (solver.solution)
        std::cout << fmt::format("solver_objective={}\n", solver.objective);

    bool agree = false;
    if (!oracle.feasible)
        agree = solver.status == IlpStatus::Infeasible;
    else if (solver.status == IlpStatus::Optimal)
        agree = std::abs(solver.objective - oracle.objective) <= 1e-6;
    std::cout << fmt::format("agree={}\n", agree ? "yes" : "no");
    return agree ? Ok : ValidationFailed;
}

int cmdExportLp(RunConfig const &cfg)
{
    auto const inst = loadInstance(cfg);
    auto const variant = parseVariant(cfg.variant);
    auto const built = buildIlp(inst, variant, modelOptions(cfg));
    emit(cfg, exportLpText(built.problem, fmt::format("fleet assignment ({})", label(variant))));
    return Ok;
}

}  // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Multi-modal fleet assignment optimiser with emission caps"};
    app.require_subcommand(1, 1);
    app.footer("Environment:\n  FLEETOPT_OUTPUT_DIR  directory for relative -o paths\n\n"
               "Exit status:\n  0 success, 1 validation failure or oracle disagreement, 2 bad input,\n"
               "  3 infeasible model, 4 solver failure");

    RunConfig cfg;

    auto addModelFlags = [&](CLI::App *sub) {
        sub->add_option("--variant", cfg.variant, "Model variant")
            ->check(CLI::IsMember({"base", "enhanced"}))
            ->capture_default_str();
        sub->add_option("--cap", cfg.cap, "Emission cap in kg CO2 (overrides the instance's cap)");
        sub->add_flag("--per-mode-demand", cfg.perModeDemand, "Cover demand per mode instead of in aggregate");
        sub->add_flag("--bound-service", cfg.boundService, "Bound vehicles in service by the fleet size");
    };
    auto addSolverFlags = [&](CLI::App *sub) {
        sub->add_option("--node-limit", cfg.nodeLimit, "Branch-and-bound node limit");
        sub->add_option("--time-limit", cfg.timeLimit, "Time limit in seconds per solve");
        sub->add_flag("-v,--verbose", cfg.verbosity, "Node log (-v) and simplex iteration log (-vv) on stderr");
    };

    auto *gen = app.add_subcommand("generate", "Write a generated instance as JSON");
    gen->add_option("--preset", cfg.preset, "Named preset (texas)");
    gen->add_option("--spec", cfg.specPath, "Generator spec JSON")->check(CLI::ExistingFile);
    gen->add_option("--seed", cfg.seed, "Random seed")->each([&](std::string const &) { cfg.seedGiven = true; });
    gen->add_option("--periods", cfg.periods, "Periods for the texas preset")->check(CLI::PositiveNumber);
    gen->add_option("-o,--output", cfg.output, "Output path (stdout when omitted)");
    gen->callback([&] {
        if (!cfg.preset.empty() && !cfg.specPath.empty())
            throw CLI::ValidationError("--preset and --spec are mutually exclusive");
    });

    auto *solve = app.add_subcommand("solve", "Solve an instance and report the optimum");
    solve->add_option("instance", cfg.instancePath, "Instance file (.json or long .csv)")->required();
    solve->add_option("-o,--output", cfg.output, "Solution JSON path");
    addModelFlags(solve);
    addSolverFlags(solve);

    auto *sweep = app.add_subcommand("sweep", "Solve the capped model over a range of emission caps");
    sweep->add_option("instance", cfg.instancePath, "Instance file")->required();
    sweep->add_option("-n", cfg.gridSize, "Number of evenly spaced caps");
    sweep->add_option("--caps", cfg.caps, "Comma-separated caps; 'inf' for no limit");
    sweep->add_option("--threads", cfg.threads, "Concurrent cap solves")->check(CLI::PositiveNumber);
    sweep->add_option("-o,--output", cfg.output, "CSV path (stdout when omitted)");
    sweep->add_flag("--per-mode-demand", cfg.perModeDemand, "Cover demand per mode instead of in aggregate");
    sweep->add_flag("--bound-service", cfg.boundService, "Bound vehicles in service by the fleet size");
    addSolverFlags(sweep);

    auto *validate = app.add_subcommand("validate", "Check a solution against every constraint");
    validate->add_option("instance", cfg.instancePath, "Instance file")->required();
    validate->add_option("solution", cfg.solutionPath, "Solution JSON")->required();
    addModelFlags(validate);

    auto *oracle = app.add_subcommand("oracle-check", "Compare the solver with exhaustive enumeration");
    oracle->add_option("instance", cfg.instancePath, "Instance file")->required();
    oracle->add_option("--limit", cfg.enumerationLimit, "Largest search space to enumerate")->capture_default_str();
    addModelFlags(oracle);
    addSolverFlags(oracle);

    auto *exportLp = app.add_subcommand("export-lp", "Write the model in CPLEX LP format");
    exportLp->add_option("instance", cfg.instancePath, "Instance file")->required();
    exportLp->add_option("-o,--output", cfg.output, "LP path (stdout when omitted)");
    addModelFlags(exportLp);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const &e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const &e)
    {
        app.exit(e);
        return BadInput;
    }

    try
    {
        if (*gen)
            return cmdGenerate(cfg);
        if (*solve)
            return cmdSolve(cfg);
        if (*sweep)
            return cmdSweep(cfg);
        if (*validate)
            return cmdValidate(cfg);
        if (*oracle)
            return cmdOracleCheck(cfg);
        if (*exportLp)
            return cmdExportLp(cfg);
    }
    catch (SearchSpaceTooLarge const &e)
    {
        std::cerr << "refusing: " << e.what() << '\n';
        return BadInput;
    }
    catch (InputError const &e)
    {
        std::cerr << "input error: " << e.what() << '\n';
        return BadInput;
    }
    catch (DimensionError const &e)
    {
        std::cerr << "dimension error: " << e.what() << '\n';
        return BadInput;
    }
    catch (ConfigError const &e)
    {
        std::cerr << "configuration error: " << e.what() << '\n';
        return BadInput;
    }
    catch (SolverError const &e)
    {
        std::cerr << "solver error: " << e.what() << '\n';
        return NumericFailure;
    }
    return BadInput;
}
