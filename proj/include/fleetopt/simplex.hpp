#pragma once

#include "fleetopt/ilp.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fleetopt {

namespace detail {
struct ColumnEntry {
    std::size_t row;
    double coef;
};
}  // namespace detail

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericFailure };

char const *label(LpStatus status);

enum class VarStatus { Basic, AtLower, AtUpper, Free };

struct SimplexOptions {
    double feasibilityTol = 1e-7;
    double optimalityTol = 1e-7;
    double pivotTol = 1e-9;
    std::size_t refactorInterval = 100;
    /// Consecutive degenerate pivots before switching to Bland's rule.
    std::size_t blandAfter = 1000;
    /// 0 selects a limit proportional to the problem size.
    std::size_t iterationLimit = 0;
    /// Iteration log destination; nothing is written when null.
    std::ostream *log = nullptr;
};

/// Result of one LP relaxation solve. Row duals follow the minimisation
/// convention: <= rows carry nonpositive duals and >= rows nonnegative ones.
struct LpSolution {
    LpStatus status = LpStatus::NumericFailure;
    std::vector<double> values;
    double objective = 0.0;
    std::vector<VarStatus> columnStatus;
    std::vector<VarStatus> rowStatus;  // status of each row's slack
    std::vector<double> duals;
    std::vector<double> reducedCosts;
    std::size_t iterations = 0;

    /// Phase-one optimum; strictly positive when Infeasible.
    double infeasibility = 0.0;
    /// Infeasible: row multipliers proving that no point meets every row.
    std::vector<double> farkas;
    /// Unbounded: improving direction in column space.
    std::vector<double> ray;

    std::string message;
};

/// Bounded-variable two-phase primal revised simplex with a dense explicit
/// basis inverse.
///
/// The solver keeps its working arrays between calls, so one object serves
/// repeated solves of the same problem under different column bounds. It is
/// not safe to share one solver between threads.
class SimplexSolver {
public:
    explicit SimplexSolver(IlpProblem const &problem, SimplexOptions options = {});

    LpSolution solve();
    LpSolution solve(std::span<double const> lower, std::span<double const> upper);

private:
    IlpProblem const &problem_;
    SimplexOptions options_;
    std::vector<std::vector<detail::ColumnEntry>> structural_;  // column-wise copy of the rows
    std::vector<double> rhs_;
};

LpSolution solveLp(IlpProblem const &problem, SimplexOptions const &options = {});

struct CertificateReport {
    bool primalFeasible = true;
    bool dualFeasible = true;
    bool complementary = true;
    bool strongDuality = true;
    double primalObjective = 0.0;
    double dualObjective = 0.0;
    std::vector<std::string> issues;

    bool passed() const { return primalFeasible && dualFeasible && complementary && strongDuality; }
};

/// Rechecks an LP solution against the problem without using solver internals.
///
/// Optimal solutions are checked for primal feasibility, dual feasibility
/// (recomputing reduced costs from the row duals), complementary slackness
/// and equal primal and dual objectives. Infeasible results are checked
/// through their Farkas multipliers and Unbounded results through their ray.
CertificateReport verifyLpCertificate(IlpProblem const &problem, LpSolution const &solution, double tol = 1e-6);

}  // namespace fleetopt
