#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fleetopt {

class DimensionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Count = std::int64_t;

/// Absolute tolerance used by every feasibility comparison on model quantities.
inline constexpr double kFeasTol = 1e-6;

/// Extents of the origin x destination x mode x period index space.
///
/// Arrays over (i,m,t) and (i,j,m,t) are stored flat in row-major order, last
/// index fastest, so `imt(i,m,t)` and `ijmt(i,j,m,t)` are the only layouts used
/// anywhere in the library.
struct Dimensions {
    std::size_t origins = 1;
    std::size_t destinations = 1;
    std::size_t modes = 1;
    std::size_t periods = 1;

    std::size_t imtSize() const { return origins * modes * periods; }
    std::size_t ijmtSize() const { return origins * destinations * modes * periods; }
    std::size_t ijSize() const { return origins * destinations; }
    std::size_t jtSize() const { return destinations * periods; }

    std::size_t imt(std::size_t i, std::size_t m, std::size_t t) const
    {
        return (i * modes + m) * periods + t;
    }

    std::size_t ijmt(std::size_t i, std::size_t j, std::size_t m, std::size_t t) const
    {
        return ((i * destinations + j) * modes + m) * periods + t;
    }

    std::size_t ij(std::size_t i, std::size_t j) const { return i * destinations + j; }

    void validate() const;

    bool operator==(Dimensions const &) const = default;
};

enum class Variant { Base, Enhanced };

char const *label(Variant variant);
Variant parseVariant(std::string const &name);

/// Switches for the formulation choices the model leaves open.
struct ModelOptions {
    /// Cover demand per (j,m,t) instead of aggregating over origins and modes per (j,t).
    bool perModeDemand = false;
    /// Bound q <= V and qr <= Vr.
    bool boundService = false;

    bool operator==(ModelOptions const &) const = default;
};

/// All parameters of one fleet-assignment problem.
///
/// `demand` and `distance` are distinct fields: the demand tensor is indexed by
/// (i,j,m,t), the distance matrix by (i,j) only. An absent `emissionCap` means
/// the instance carries no network emission limit. A cap of +inf is accepted
/// in memory and behaves as a slack limit.
struct Instance {
    Dimensions dims;

    std::vector<Count> fleetCap;   // V[i][m][t]
    std::vector<Count> rentalCap;  // Vr[i][m][t]
    std::vector<Count> demand;     // D[i][j][m][t]

    std::vector<double> stopCostOrg;     // CS[i][m][t]
    std::vector<double> stopCostRent;    // CSr[i][m][t]
    std::vector<double> travelCostOrg;   // CT[i][j][m][t]
    std::vector<double> travelCostRent;  // CTr[i][j][m][t]
    double budget = 0.0;                 // TC
    std::vector<double> opCost;          // OPR[i][m][t]
    std::vector<double> rentCost;        // Rent[i][m][t]

    std::vector<double> emissionOrg;   // E[m], kg CO2 per km
    std::vector<double> emissionRent;  // Er[m], kg CO2 per km
    std::vector<double> distance;      // Dist[i][j], km

    std::optional<double> emissionCap;

    /// Zero-filled instance with every array sized for `dims`.
    static Instance zeros(Dimensions const &dims);

    /// Throws DimensionError on extent mismatch, InputError on negative or
    /// non-finite entries.
    void validate() const;

    bool operator==(Instance const &) const = default;
};

/// Integer vehicle counts for every decision variable.
struct Solution {
    Dimensions dims;
    std::vector<Count> x;   // [i][j][m][t]
    std::vector<Count> xr;  // [i][j][m][t]
    std::vector<Count> y;   // [i][m][t]
    std::vector<Count> yr;  // [i][m][t]
    std::vector<Count> q;   // [i][m][t]
    std::vector<Count> qr;  // [i][m][t]

    static Solution zeros(Dimensions const &dims);

    /// Throws DimensionError when array extents disagree with `dims`, or
    /// InputError on negative entries.
    void validate() const;

    bool operator==(Solution const &) const = default;
};

enum class ConstraintKind {
    FleetBalance,   // sum_j x + y = V            per (i,m,t)
    RentalBalance,  // sum_j xr + yr = Vr         per (i,m,t)
    Demand,         // covered trips >= demand    per (j,t), or (j,m,t)
    Budget,         // OPR q + Rent qr <= TC
    FleetService,   // sum_j x <= q               per (i,m,t)
    RentalService,  // sum_j xr <= qr             per (i,m,t)
    EmissionCap,    // network emissions <= cap
    FleetServiceBound,   // q <= V, only with ModelOptions::boundService
    RentalServiceBound,  // qr <= Vr, only with ModelOptions::boundService
};

char const *label(ConstraintKind kind);

enum class Sense { LessEqual, GreaterEqual, Equal };

char const *label(Sense sense);

/// One failed constraint evaluation. `index` holds the constraint's own index
/// tuple: (i,m,t), (j,t), (j,m,t) or empty for global rows.
struct Violation {
    ConstraintKind kind;
    std::vector<std::size_t> index;
    double lhs;
    double rhs;
    Sense sense;

    std::string describe() const;
};

/// Cost of `solution` under the six-term travel/stop/operate/rent objective.
double evaluateObjective(Instance const &instance, Solution const &solution);

/// The six objective term groups in order: travel org, travel rent, stop org,
/// stop rent, operating, rental. Their sum is evaluateObjective.
std::vector<double> objectiveTerms(Instance const &instance, Solution const &solution);

std::vector<Violation> checkFeasible(Instance const &instance,
                                     Solution const &solution,
                                     Variant variant,
                                     ModelOptions const &options = {});

/// Same verdict as `checkFeasible(...).empty()` without collecting violations.
bool isFeasible(Instance const &instance,
                Solution const &solution,
                Variant variant,
                ModelOptions const &options = {});

double totalEmissions(Instance const &instance, Solution const &solution);

/// OPR q + Rent qr, the quantity limited by the budget.
double budgetUsage(Instance const &instance, Solution const &solution);

/// Rented share of travelling vehicles; 0 when nothing travels.
double rentalShare(Solution const &solution);

/// The solution where nothing travels: y = V, yr = Vr, everything else zero.
Solution idleSolution(Instance const &instance);

}  // namespace fleetopt
