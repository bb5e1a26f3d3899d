#pragma once

#include "fleetopt/branch_bound.hpp"
#include "fleetopt/model.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fleetopt {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Outcome of solving one model variant end to end.
struct ModelSolve {
    IlpStatus status = IlpStatus::SolverError;
    std::optional<Solution> solution;
    double objective = 0.0;
    double emissions = 0.0;
    double budgetUsed = 0.0;
    double rentalShare = 0.0;
    std::size_t nodes = 0;
    std::string message;
};

ModelSolve solveModel(Instance const &instance,
                      Variant variant,
                      SolveParams const &params = {},
                      ModelOptions const &options = {});

/// Smallest network emissions reachable under the fleet, demand, budget and
/// service constraints, or nullopt when those constraints admit no solution.
/// Throws SolverError if the search fails to finish.
std::optional<double> minEmissions(Instance const &instance,
                                   SolveParams const &params = {},
                                   ModelOptions const &options = {});

/// `count` evenly spaced caps from the minimum reachable emissions up to the
/// emissions of the uncapped optimum, both ends included. Throws InputError
/// when count < 2 and SolverError when the uncapped model is infeasible.
std::vector<double> capGrid(Instance const &instance,
                            std::size_t count,
                            SolveParams const &params = {},
                            ModelOptions const &options = {});

struct SweepRow {
    double cap = 0.0;
    IlpStatus status = IlpStatus::SolverError;
    double objective = 0.0;
    double emissions = 0.0;
    double rentalShare = 0.0;
    std::size_t nodes = 0;
    std::string message;

    bool feasible() const { return status == IlpStatus::Optimal; }
};

struct SweepResult {
    /// Ascending by cap.
    std::vector<SweepRow> rows;
    double baseObjective = 0.0;
    double baseEmissions = 0.0;
    double baseRentalShare = 0.0;
    /// Mean of costDeltaPercent over the feasible rows; empty when none is.
    std::optional<double> meanCostIncreasePct;
    std::optional<double> minFeasibleCap;
};

/// Solves the capped model once per cap. Per-cap failures are recorded in
/// their row; `threads` > 1 solves caps concurrently without changing the
/// result. Throws SolverError when the uncapped model cannot be solved.
SweepResult sweepEmissionCap(Instance const &instance,
                             std::vector<double> caps,
                             SolveParams const &params = {},
                             ModelOptions const &options = {},
                             unsigned threads = 1);

/// 100 * (enhanced - base) / base. Throws InputError unless base > 0.
double costDeltaPercent(double baseObjective, double enhancedObjective);

/// Header `cap,status,objective,emissions,rental_share,nodes`, one line per
/// row, then `# key=value` summary lines.
std::string sweepCsv(SweepResult const &result);

}  // namespace fleetopt
