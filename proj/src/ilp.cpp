#include "fleetopt/ilp.hpp"

#include <cmath>
#include <fmt/format.h>
#include <tuple>

namespace fleetopt {

namespace {

constexpr VarKind kKinds[] = {VarKind::X, VarKind::XR, VarKind::Y, VarKind::YR, VarKind::Q, VarKind::QR};

bool isRouteKind(VarKind kind)
{
    return kind == VarKind::X || kind == VarKind::XR;
}

std::string formatNumber(double value)
{
    if (value == kInf)
        return "+inf";
    if (value == -kInf)
        return "-inf";
    return fmt::format("{}", value);
}

void appendTerms(std::string &out, std::vector<Term> const &terms, std::vector<Column> const &columns)
{
    constexpr std::size_t termsPerLine = 6;

    if (terms.empty())
    {
        // LP readers need at least one term per row.
        out += fmt::format(" 0 {}", columns.empty() ? std::string("dummy") : columns.front().name);
        return;
    }

    for (std::size_t k = 0; k != terms.size(); ++k)
    {
        if (k != 0 && k % termsPerLine == 0)
            out += "\n  ";
        auto const coef = terms[k].coef;
        auto const &name = columns[terms[k].column].name;
        if (k == 0)
            out += coef < 0 ? fmt::format(" - {} {}", formatNumber(-coef), name)
                            : fmt::format(" {} {}", formatNumber(coef), name);
        else
            out += coef < 0 ? fmt::format(" - {} {}", formatNumber(-coef), name)
                            : fmt::format(" + {} {}", formatNumber(coef), name);
    }
}

}  // namespace

void IlpProblem::validate() const
{
    for (std::size_t c = 0; c != columns.size(); ++c)
    {
        auto const &col = columns[c];
        if (!std::isfinite(col.cost))
            throw InputError(fmt::format("column {} has a non-finite cost", col.name));
        if (std::isnan(col.lower) || std::isnan(col.upper) || col.lower == kInf || col.upper == -kInf)
            throw InputError(fmt::format("column {} has invalid bounds", col.name));
        if (col.lower > col.upper)
            throw InputError(fmt::format("column {} has lower bound {} above upper bound {}", col.name, col.lower,
                                         col.upper));
    }

    for (auto const &row : rows)
    {
        if (!std::isfinite(row.rhs))
            throw InputError(fmt::format("row {} has a non-finite right-hand side", row.name));
        for (auto const &term : row.terms)
        {
            if (term.column >= columns.size())
                throw InputError(fmt::format("row {} references column {} of {}", row.name, term.column,
                                             columns.size()));
            if (!std::isfinite(term.coef))
                throw InputError(fmt::format("row {} has a non-finite coefficient", row.name));
        }
    }
}

double IlpProblem::objective(std::span<double const> values) const
{
    double total = 0.0;
    for (std::size_t c = 0; c != columns.size(); ++c)
        total += columns[c].cost * values[c];
    return total;
}

double IlpProblem::rowActivity(std::size_t row, std::span<double const> values) const
{
    double total = 0.0;
    for (auto const &term : rows[row].terms)
        total += term.coef * values[term.column];
    return total;
}

bool IlpProblem::satisfies(std::span<double const> values, double tol) const
{
    if (values.size() != columns.size())
        return false;

    for (std::size_t c = 0; c != columns.size(); ++c)
        if (values[c] < columns[c].lower - tol || values[c] > columns[c].upper + tol)
            return false;

    for (std::size_t r = 0; r != rows.size(); ++r)
    {
        auto const lhs = rowActivity(r, values);
        auto const rhs = rows[r].rhs;
        switch (rows[r].sense)
        {
        case Sense::LessEqual:
            if (lhs > rhs + tol)
                return false;
            break;
        case Sense::GreaterEqual:
            if (lhs < rhs - tol)
                return false;
            break;
        case Sense::Equal:
            if (std::abs(lhs - rhs) > tol)
                return false;
            break;
        }
    }
    return true;
}

char const *label(VarKind kind)
{
    switch (kind)
    {
    case VarKind::X:
        return "x";
    case VarKind::XR:
        return "xr";
    case VarKind::Y:
        return "y";
    case VarKind::YR:
        return "yr";
    case VarKind::Q:
        return "q";
    case VarKind::QR:
        return "qr";
    }
    return "?";
}

VarIndexMap::VarIndexMap(Dimensions const &dims) : dims_(dims)
{
    dims_.validate();
}

std::size_t VarIndexMap::numColumns() const
{
    return 2 * dims_.ijmtSize() + 4 * dims_.imtSize();
}

std::size_t VarIndexMap::offset(VarKind kind) const
{
    auto const route = dims_.ijmtSize();
    auto const node = dims_.imtSize();
    switch (kind)
    {
    case VarKind::X:
        return 0;
    case VarKind::XR:
        return route;
    case VarKind::Y:
        return 2 * route;
    case VarKind::YR:
        return 2 * route + node;
    case VarKind::Q:
        return 2 * route + 2 * node;
    case VarKind::QR:
        return 2 * route + 3 * node;
    }
    return 0;
}

std::size_t VarIndexMap::column(VarKey const &key) const
{
    if (key.i >= dims_.origins || key.m >= dims_.modes || key.t >= dims_.periods
        || (isRouteKind(key.kind) && key.j >= dims_.destinations))
        throw DimensionError("variable index out of range");

    if (isRouteKind(key.kind))
        return offset(key.kind) + dims_.ijmt(key.i, key.j, key.m, key.t);
    return offset(key.kind) + dims_.imt(key.i, key.m, key.t);
}

VarKey VarIndexMap::key(std::size_t column) const
{
    if (column >= numColumns())
        throw DimensionError(fmt::format("column {} out of range", column));

    VarKind kind = VarKind::X;
    for (auto candidate : kKinds)
        if (column >= offset(candidate))
            kind = candidate;

    auto local = column - offset(kind);
    VarKey key{kind};
    key.t = local % dims_.periods;
    local /= dims_.periods;
    key.m = local % dims_.modes;
    local /= dims_.modes;
    if (isRouteKind(kind))
    {
        key.j = local % dims_.destinations;
        local /= dims_.destinations;
    }
    key.i = local;
    return key;
}

std::string VarIndexMap::name(std::size_t column) const
{
    auto const k = key(column);
    if (isRouteKind(k.kind))
        return fmt::format("{}_{}_{}_{}_{}", label(k.kind), k.i + 1, k.j + 1, k.m + 1, k.t + 1);
    return fmt::format("{}_{}_{}_{}", label(k.kind), k.i + 1, k.m + 1, k.t + 1);
}

IlpProblem buildIlp(Instance const &instance, Variant variant, VarIndexMap const &map, ModelOptions const &options)
{
    instance.validate();
    if (!(map.dims() == instance.dims))
        throw DimensionError("variable map dimensions do not match the instance");
    if (variant == Variant::Enhanced && !instance.emissionCap)
        throw ConfigError("enhanced variant requires an emission cap");

    auto const &d = instance.dims;
    IlpProblem problem;
    problem.columns.resize(map.numColumns());

    for (std::size_t c = 0; c != map.numColumns(); ++c)
    {
        auto const key = map.key(c);
        auto &col = problem.columns[c];
        col.name = map.name(c);
        col.integer = true;
        col.lower = 0.0;

        auto const node = d.imt(key.i, key.m, key.t);
        auto const fleet = static_cast<double>(instance.fleetCap[node]);
        auto const rental = static_cast<double>(instance.rentalCap[node]);
        switch (key.kind)
        {
        case VarKind::X:
            col.cost = instance.travelCostOrg[d.ijmt(key.i, key.j, key.m, key.t)];
            col.upper = fleet;
            break;
        case VarKind::XR:
            col.cost = instance.travelCostRent[d.ijmt(key.i, key.j, key.m, key.t)];
            col.upper = rental;
            break;
        case VarKind::Y:
            col.cost = instance.stopCostOrg[node];
            col.upper = fleet;
            break;
        case VarKind::YR:
            col.cost = instance.stopCostRent[node];
            col.upper = rental;
            break;
        case VarKind::Q:
            col.cost = instance.opCost[node];
            col.upper = options.boundService ? fleet : kInf;
            break;
        case VarKind::QR:
            col.cost = instance.rentCost[node];
            col.upper = options.boundService ? rental : kInf;
            break;
        }
    }

    auto sentTerms = [&](VarKind kind, std::size_t i, std::size_t m, std::size_t t) {
        std::vector<Term> terms;
        for (std::size_t j = 0; j != d.destinations; ++j)
            terms.push_back({map.column({kind, i, j, m, t}), 1.0});
        return terms;
    };

    for (std::size_t i = 0; i != d.origins; ++i)
        for (std::size_t m = 0; m != d.modes; ++m)
            for (std::size_t t = 0; t != d.periods; ++t)
            {
                Row row{fmt::format("fleet_{}_{}_{}", i + 1, m + 1, t + 1), sentTerms(VarKind::X, i, m, t),
                        Sense::Equal, static_cast<double>(instance.fleetCap[d.imt(i, m, t)])};
                row.terms.push_back({map.column({VarKind::Y, i, 0, m, t}), 1.0});
                problem.rows.push_back(std::move(row));
            }

    for (std::size_t i = 0; i != d.origins; ++i)
        for (std::size_t m = 0; m != d.modes; ++m)
            for (std::size_t t = 0; t != d.periods; ++t)
            {
                Row row{fmt::format("rental_{}_{}_{}", i + 1, m + 1, t + 1), sentTerms(VarKind::XR, i, m, t),
                        Sense::Equal, static_cast<double>(instance.rentalCap[d.imt(i, m, t)])};
                row.terms.push_back({map.column({VarKind::YR, i, 0, m, t}), 1.0});
                problem.rows.push_back(std::move(row));
            }

    auto demandRow = [&](std::string name, std::size_t j, std::size_t t, std::size_t mFirst, std::size_t mLast) {
        Row row{std::move(name), {}, Sense::GreaterEqual, 0.0};
        double required = 0.0;
        for (std::size_t i = 0; i != d.origins; ++i)
            for (std::size_t m = mFirst; m != mLast; ++m)
            {
                row.terms.push_back({map.column({VarKind::X, i, j, m, t}), 1.0});
                row.terms.push_back({map.column({VarKind::XR, i, j, m, t}), 1.0});
                required += static_cast<double>(instance.demand[d.ijmt(i, j, m, t)]);
            }
        row.rhs = required;
        problem.rows.push_back(std::move(row));
    };

    if (options.perModeDemand)
    {
        for (std::size_t j = 0; j != d.destinations; ++j)
            for (std::size_t m = 0; m != d.modes; ++m)
                for (std::size_t t = 0; t != d.periods; ++t)
                    demandRow(fmt::format("demand_{}_{}_{}", j + 1, m + 1, t + 1), j, t, m, m + 1);
    }
    else
    {
        for (std::size_t j = 0; j != d.destinations; ++j)
            for (std::size_t t = 0; t != d.periods; ++t)
                demandRow(fmt::format("demand_{}_{}", j + 1, t + 1), j, t, 0, d.modes);
    }

    {
        Row row{"budget", {}, Sense::LessEqual, instance.budget};
        for (std::size_t k = 0; k != d.imtSize(); ++k)
            if (instance.opCost[k] != 0.0)
                row.terms.push_back({map.offset(VarKind::Q) + k, instance.opCost[k]});
        for (std::size_t k = 0; k != d.imtSize(); ++k)
            if (instance.rentCost[k] != 0.0)
                row.terms.push_back({map.offset(VarKind::QR) + k, instance.rentCost[k]});
        problem.rows.push_back(std::move(row));
    }

    for (auto [kind, service, prefix] : {std::tuple{VarKind::X, VarKind::Q, "service"},
                                         std::tuple{VarKind::XR, VarKind::QR, "rservice"}})
        for (std::size_t i = 0; i != d.origins; ++i)
            for (std::size_t m = 0; m != d.modes; ++m)
                for (std::size_t t = 0; t != d.periods; ++t)
                {
                    Row row{fmt::format("{}_{}_{}_{}", prefix, i + 1, m + 1, t + 1), sentTerms(kind, i, m, t),
                            Sense::LessEqual, 0.0};
                    row.terms.push_back({map.column({service, i, 0, m, t}), -1.0});
                    problem.rows.push_back(std::move(row));
                }

    // An infinite cap is slack by definition; the row is left out.
    if (variant == Variant::Enhanced && std::isfinite(*instance.emissionCap))
    {
        Row row{"emission", {}, Sense::LessEqual, *instance.emissionCap};
        for (auto kind : {VarKind::X, VarKind::XR})
        {
            auto const &factor = kind == VarKind::X ? instance.emissionOrg : instance.emissionRent;
            for (std::size_t i = 0; i != d.origins; ++i)
                for (std::size_t j = 0; j != d.destinations; ++j)
                    for (std::size_t m = 0; m != d.modes; ++m)
                    {
                        auto const coef = factor[m] * instance.distance[d.ij(i, j)];
                        if (coef == 0.0)
                            continue;
                        for (std::size_t t = 0; t != d.periods; ++t)
                            row.terms.push_back({map.column({kind, i, j, m, t}), coef});
                    }
        }
        problem.rows.push_back(std::move(row));
    }

    return problem;
}

BuiltModel buildIlp(Instance const &instance, Variant variant, ModelOptions const &options)
{
    VarIndexMap map(instance.dims);
    auto problem = buildIlp(instance, variant, map, options);
    return {std::move(problem), std::move(map)};
}

Solution extractSolution(std::span<double const> values, VarIndexMap const &map)
{
    if (values.size() != map.numColumns())
        throw DimensionError(fmt::format("value vector has {} entries, expected {}", values.size(),
                                         map.numColumns()));

    auto sol = Solution::zeros(map.dims());
    auto read = [&](VarKind kind, std::vector<Count> &out) {
        auto const base = map.offset(kind);
        for (std::size_t k = 0; k != out.size(); ++k)
            out[k] = std::max<Count>(0, static_cast<Count>(std::llround(values[base + k])));
    };
    read(VarKind::X, sol.x);
    read(VarKind::XR, sol.xr);
    read(VarKind::Y, sol.y);
    read(VarKind::YR, sol.yr);
    read(VarKind::Q, sol.q);
    read(VarKind::QR, sol.qr);
    return sol;
}

std::vector<double> encodeSolution(Solution const &solution, VarIndexMap const &map)
{
    if (!(solution.dims == map.dims()))
        throw DimensionError("solution dimensions do not match the variable map");
    solution.validate();

    std::vector<double> values(map.numColumns(), 0.0);
    auto write = [&](VarKind kind, std::vector<Count> const &in) {
        auto const base = map.offset(kind);
        for (std::size_t k = 0; k != in.size(); ++k)
            values[base + k] = static_cast<double>(in[k]);
    };
    write(VarKind::X, solution.x);
    write(VarKind::XR, solution.xr);
    write(VarKind::Y, solution.y);
    write(VarKind::YR, solution.yr);
    write(VarKind::Q, solution.q);
    write(VarKind::QR, solution.qr);
    return values;
}

std::string exportLpText(IlpProblem const &problem, std::string const &title)
{
    std::string out;
    if (!title.empty())
        out += fmt::format("\\ {}\n", title);

    out += "Minimize\n obj:";
    std::vector<Term> objective;
    for (std::size_t c = 0; c != problem.columns.size(); ++c)
        if (problem.columns[c].cost != 0.0)
            objective.push_back({c, problem.columns[c].cost});
    appendTerms(out, objective, problem.columns);
    out += "\nSubject To\n";

    for (auto const &row : problem.rows)
    {
        out += fmt::format(" {}:", row.name);
        appendTerms(out, row.terms, problem.columns);
        out += fmt::format(" {} {}\n", row.sense == Sense::Equal ? "=" : label(row.sense),
                           formatNumber(row.rhs));
    }

    out += "Bounds\n";
    for (auto const &col : problem.columns)
    {
        if (col.lower == col.upper)
            out += fmt::format(" {} = {}\n", col.name, formatNumber(col.lower));
        else if (col.lower == -kInf && col.upper == kInf)
            out += fmt::format(" {} free\n", col.name);
        else
            out += fmt::format(" {} <= {} <= {}\n", formatNumber(col.lower), col.name, formatNumber(col.upper));
    }

    bool anyInteger = false;
    for (auto const &col : problem.columns)
        anyInteger = anyInteger || col.integer;
    if (anyInteger)
    {
        out += "Generals\n";
        std::size_t onLine = 0;
        for (auto const &col : problem.columns)
        {
            if (!col.integer)
                continue;
            out += " ";
            out += col.name;
            if (++onLine == 8)
            {
                out += "\n";
                onLine = 0;
            }
        }
        if (onLine != 0)
            out += "\n";
    }

    out += "End\n";
    return out;
}

}  // namespace fleetopt
