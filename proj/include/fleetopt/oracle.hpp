#pragma once

#include "fleetopt/model.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>

namespace fleetopt {

inline constexpr std::uint64_t kDefaultEnumerationLimit = 1'000'000;

struct EnumerationSize {
    std::uint64_t count = 0;
    /// Set when the exact count does not fit in 64 bits; `count` then saturates.
    bool tooLarge = false;
};

/// Number of (x, xr) assignments that respect the per-(i,m,t) fleet and
/// rental capacities. Distributing at most V trips over J destinations can be
/// done in C(V+J, J) ways; the count is the product over all (i,m,t) of that
/// figure for V and for Vr.
EnumerationSize enumerationSize(Instance const &instance);

class SearchSpaceTooLarge : public std::runtime_error {
public:
    explicit SearchSpaceTooLarge(EnumerationSize size);

    EnumerationSize size;
};

/// Calls `visit` once per capacity-respecting (x, xr) assignment, in
/// lexicographic order of the flattened (x, xr) vector. y, yr, q and qr are
/// derived: y = V - sum_j x, yr = Vr - sum_j xr, q = sum_j x, qr = sum_j xr.
void enumerateAssignments(Instance const &instance, std::function<void(Solution const &)> const &visit);

struct OracleResult {
    bool feasible = false;
    Solution solution;
    double objective = 0.0;
    std::uint64_t enumerated = 0;
};

/// Exhaustive search over every assignment from enumerateAssignments. Keeps
/// the cheapest one that passes the feasibility check; the first one found
/// wins ties. Throws SearchSpaceTooLarge above `limit`.
OracleResult bruteForceSolve(Instance const &instance,
                             Variant variant,
                             ModelOptions const &options = {},
                             std::uint64_t limit = kDefaultEnumerationLimit);

}  // namespace fleetopt
