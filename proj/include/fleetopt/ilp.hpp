#pragma once

#include "fleetopt/model.hpp"

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace fleetopt {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Column {
    std::string name;
    double cost = 0.0;
    double lower = 0.0;
    double upper = kInf;
    bool integer = true;
};

struct Term {
    std::size_t column;
    double coef;

    bool operator==(Term const &) const = default;
};

struct Row {
    std::string name;
    std::vector<Term> terms;
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
};

/// Sparse minimisation problem with bounded, optionally integer columns.
struct IlpProblem {
    std::vector<Column> columns;
    std::vector<Row> rows;

    std::size_t numColumns() const { return columns.size(); }
    std::size_t numRows() const { return rows.size(); }

    /// Throws InputError on a dangling column reference, inverted bounds or a
    /// non-finite coefficient.
    void validate() const;

    double objective(std::span<double const> values) const;
    double rowActivity(std::size_t row, std::span<double const> values) const;

    /// True when every bound and row holds within `tol`.
    bool satisfies(std::span<double const> values, double tol) const;
};

enum class VarKind { X, XR, Y, YR, Q, QR };

char const *label(VarKind kind);

struct VarKey {
    VarKind kind;
    std::size_t i = 0;
    std::size_t j = 0;  // ignored for y, yr, q, qr
    std::size_t m = 0;
    std::size_t t = 0;

    bool operator==(VarKey const &) const = default;
};

/// Column layout of the fleet model: kind-major (x, xr, y, yr, q, qr), then
/// i, j, m, t lexicographic within each kind.
class VarIndexMap {
public:
    explicit VarIndexMap(Dimensions const &dims);

    Dimensions const &dims() const { return dims_; }
    std::size_t numColumns() const;

    std::size_t column(VarKey const &key) const;
    VarKey key(std::size_t column) const;

    /// 1-based name such as x_1_2_1_1 or q_2_1_1.
    std::string name(std::size_t column) const;

    std::size_t offset(VarKind kind) const;

private:
    Dimensions dims_;
};

IlpProblem buildIlp(Instance const &instance,
                    Variant variant,
                    VarIndexMap const &map,
                    ModelOptions const &options = {});

struct BuiltModel {
    IlpProblem problem;
    VarIndexMap map;
};

BuiltModel buildIlp(Instance const &instance, Variant variant, ModelOptions const &options = {});

/// Rounds column values to the nearest integer and scatters them into a
/// Solution. Throws DimensionError when the length does not match the map.
Solution extractSolution(std::span<double const> values, VarIndexMap const &map);

std::vector<double> encodeSolution(Solution const &solution, VarIndexMap const &map);

/// CPLEX LP format text. Output is byte-stable for a given problem.
std::string exportLpText(IlpProblem const &problem, std::string const &title = {});

}  // namespace fleetopt
