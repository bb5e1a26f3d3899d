#pragma once

#include "fleetopt/ilp.hpp"
#include "fleetopt/simplex.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fleetopt {

struct SolveParams {
    double integralityTol = 1e-6;
    double absoluteGapTol = 1e-6;
    double relativeGapTol = 1e-9;
    std::optional<std::size_t> nodeLimit;
    std::optional<double> timeLimitSeconds;
    /// One line per solved node (id, bound, depth, fractional count) when set.
    std::ostream *nodeLog = nullptr;
    SimplexOptions lp;

    /// Throws ConfigError when a tolerance is not strictly positive.
    void validate() const;
};

enum class IlpStatus { Optimal, Infeasible, Unbounded, NodeLimit, TimeLimit, SolverError };

char const *label(IlpStatus status);

struct IlpResult {
    IlpStatus status = IlpStatus::SolverError;
    /// Best integer point found; empty when there is none.
    std::vector<double> values;
    double objective = kInf;
    double bestBound = -kInf;
    double gap = kInf;
    std::size_t nodes = 0;
    std::size_t lpIterations = 0;
    std::string message;

    bool hasIncumbent() const { return !values.empty(); }
};

/// Best-bound branch and bound over the simplex relaxation.
///
/// Nodes are expanded in order of their parent's relaxation bound, ties going
/// to the lower node id. The branching column is the most fractional one
/// (lowest index on ties) and the floor child is created first. Integer
/// candidates are snapped to the nearest integer and rechecked against every
/// row and bound before they may become the incumbent.
IlpResult solveIlp(IlpProblem const &problem, SolveParams const &params = {});

}  // namespace fleetopt
