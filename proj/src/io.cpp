#include "fleetopt/io.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

namespace fleetopt {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <typename T>
ordered_json nestImt(std::vector<T> const &flat, Dimensions const &d)
{
    auto out = ordered_json::array();
    for (std::size_t i = 0; i != d.origins; ++i)
    {
        auto byMode = ordered_json::array();
        for (std::size_t m = 0; m != d.modes; ++m)
        {
            auto byPeriod = ordered_json::array();
            for (std::size_t t = 0; t != d.periods; ++t)
                byPeriod.push_back(flat[d.imt(i, m, t)]);
            byMode.push_back(std::move(byPeriod));
        }
        out.push_back(std::move(byMode));
    }
    return out;
}

template <typename T>
ordered_json nestIjmt(std::vector<T> const &flat, Dimensions const &d)
{
    auto out = ordered_json::array();
    for (std::size_t i = 0; i != d.origins; ++i)
    {
        auto byDest = ordered_json::array();
        for (std::size_t j = 0; j != d.destinations; ++j)
        {
            auto byMode = ordered_json::array();
            for (std::size_t m = 0; m != d.modes; ++m)
            {
                auto byPeriod = ordered_json::array();
                for (std::size_t t = 0; t != d.periods; ++t)
                    byPeriod.push_back(flat[d.ijmt(i, j, m, t)]);
                byMode.push_back(std::move(byPeriod));
            }
            byDest.push_back(std::move(byMode));
        }
        out.push_back(std::move(byDest));
    }
    return out;
}

ordered_json nestIj(std::vector<double> const &flat, Dimensions const &d)
{
    auto out = ordered_json::array();
    for (std::size_t i = 0; i != d.origins; ++i)
    {
        auto row = ordered_json::array();
        for (std::size_t j = 0; j != d.destinations; ++j)
            row.push_back(flat[d.ij(i, j)]);
        out.push_back(std::move(row));
    }
    return out;
}

json const &field(json const &obj, char const *name)
{
    if (!obj.is_object() || !obj.contains(name))
        throw InputError(fmt::format("missing field '{}'", name));
    return obj.at(name);
}

// Reads `node` as a nested array whose extents are `shape`, appending the
// leaves in row-major order.
template <typename T>
void flatten(json const &node, std::vector<std::size_t> const &shape, std::size_t level, char const *name,
             std::vector<T> &out)
{
    if (!node.is_array() || node.size() != shape[level])
        throw DimensionError(fmt::format("'{}' has the wrong extent at depth {} (expected {})", name, level,
                                         shape[level]));
    for (auto const &child : node)
    {
        if (level + 1 < shape.size())
        {
            flatten(child, shape, level + 1, name, out);
            continue;
        }
        if (!child.is_number())
            throw InputError(fmt::format("'{}' holds a non-numeric entry", name));
        if constexpr (std::is_integral_v<T>)
        {
            if (!child.is_number_integer())
            {
                auto const v = child.get<double>();
                if (v != std::floor(v))
                    throw InputError(fmt::format("'{}' must hold integers", name));
                out.push_back(static_cast<T>(v));
            }
            else
                out.push_back(child.get<T>());
        }
        else
            out.push_back(child.get<T>());
    }
}

template <typename T>
std::vector<T> readArray(json const &obj, char const *name, std::vector<std::size_t> const &shape)
{
    std::vector<T> out;
    flatten(field(obj, name), shape, 0, name, out);
    return out;
}

Dimensions readDims(json const &obj)
{
    auto const &dims = field(obj, "dims");
    auto count = [&](char const *name) {
        auto const &v = field(dims, name);
        if (!v.is_number_integer() || v.get<long long>() < 1)
            throw DimensionError(fmt::format("dims.{} must be a positive integer", name));
        return v.get<std::size_t>();
    };
    Dimensions d{count("I"), count("J"), count("M"), count("T")};
    d.validate();
    return d;
}

ordered_json writeDims(Dimensions const &d)
{
    return ordered_json{{"I", d.origins}, {"J", d.destinations}, {"M", d.modes}, {"T", d.periods}};
}

void checkSchema(json const &obj, char const *expected)
{
    if (obj.is_object() && obj.contains("schema") && obj.at("schema") != expected)
        throw InputError(fmt::format("unsupported schema {} (expected {})", obj.at("schema").dump(), expected));
}

ordered_json rangeJson(IntRange const &r)
{
    return ordered_json::array({r.min, r.max});
}

ordered_json rangeJson(RealRange const &r)
{
    return ordered_json::array({r.min, r.max});
}

template <typename Range>
void readRange(json const &obj, char const *name, Range &range)
{
    if (!obj.contains(name))
        return;
    auto const &v = obj.at(name);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw InputError(fmt::format("'{}' must be a [min, max] pair", name));
    range.min = v[0].get<decltype(range.min)>();
    range.max = v[1].get<decltype(range.max)>();
}

}  // namespace

ordered_json toJson(Instance const &inst)
{
    auto const &d = inst.dims;
    ordered_json out;
    out["schema"] = kInstanceSchema;
    out["dims"] = writeDims(d);
    out["fleet_cap"] = nestImt(inst.fleetCap, d);
    out["rental_cap"] = nestImt(inst.rentalCap, d);
    out["demand"] = nestIjmt(inst.demand, d);
    out["stop_cost_org"] = nestImt(inst.stopCostOrg, d);
    out["stop_cost_rent"] = nestImt(inst.stopCostRent, d);
    out["travel_cost_org"] = nestIjmt(inst.travelCostOrg, d);
    out["travel_cost_rent"] = nestIjmt(inst.travelCostRent, d);
    out["budget"] = inst.budget;
    out["op_cost"] = nestImt(inst.opCost, d);
    out["rent_cost"] = nestImt(inst.rentCost, d);
    out["emission_org"] = inst.emissionOrg;
    out["emission_rent"] = inst.emissionRent;
    out["distance"] = nestIj(inst.distance, d);
    if (!inst.emissionCap)
        out["emission_cap"] = nullptr;
    else if (std::isinf(*inst.emissionCap))
        out["emission_cap"] = "inf";
    else
        out["emission_cap"] = *inst.emissionCap;
    return out;
}

Instance instanceFromJson(json const &obj)
{
    checkSchema(obj, kInstanceSchema);

    Instance inst;
    inst.dims = readDims(obj);
    auto const &d = inst.dims;
    std::vector<std::size_t> const imt{d.origins, d.modes, d.periods};
    std::vector<std::size_t> const ijmt{d.origins, d.destinations, d.modes, d.periods};

    inst.fleetCap = readArray<Count>(obj, "fleet_cap", imt);
    inst.rentalCap = readArray<Count>(obj, "rental_cap", imt);
    inst.demand = readArray<Count>(obj, "demand", ijmt);
    inst.stopCostOrg = readArray<double>(obj, "stop_cost_org", imt);
    inst.stopCostRent = readArray<double>(obj, "stop_cost_rent", imt);
    inst.travelCostOrg = readArray<double>(obj, "travel_cost_org", ijmt);
    inst.travelCostRent = readArray<double>(obj, "travel_cost_rent", ijmt);
    inst.opCost = readArray<double>(obj, "op_cost", imt);
    inst.rentCost = readArray<double>(obj, "rent_cost", imt);
    inst.emissionOrg = readArray<double>(obj, "emission_org", {d.modes});
    inst.emissionRent = readArray<double>(obj, "emission_rent", {d.modes});
    inst.distance = readArray<double>(obj, "distance", {d.origins, d.destinations});

    auto const &budget = field(obj, "budget");
    if (!budget.is_number())
        throw InputError("'budget' must be a number");
    inst.budget = budget.get<double>();

    if (obj.contains("emission_cap"))
    {
        auto const &cap = obj.at("emission_cap");
        if (cap.is_number())
            inst.emissionCap = cap.get<double>();
        else if (cap.is_string() && cap.get<std::string>() == "inf")
            inst.emissionCap = std::numeric_limits<double>::infinity();
        else if (!cap.is_null())
            throw InputError("'emission_cap' must be a number, \"inf\" or null");
    }

    inst.validate();
    return inst;
}

ordered_json toJson(Solution const &sol)
{
    auto const &d = sol.dims;
    ordered_json out;
    out["schema"] = kSolutionSchema;
    out["dims"] = writeDims(d);
    out["x"] = nestIjmt(sol.x, d);
    out["xr"] = nestIjmt(sol.xr, d);
    out["y"] = nestImt(sol.y, d);
    out["yr"] = nestImt(sol.yr, d);
    out["q"] = nestImt(sol.q, d);
    out["qr"] = nestImt(sol.qr, d);
    return out;
}

Solution solutionFromJson(json const &obj)
{
    checkSchema(obj, kSolutionSchema);

    Solution sol;
    sol.dims = readDims(obj);
    auto const &d = sol.dims;
    std::vector<std::size_t> const imt{d.origins, d.modes, d.periods};
    std::vector<std::size_t> const ijmt{d.origins, d.destinations, d.modes, d.periods};

    sol.x = readArray<Count>(obj, "x", ijmt);
    sol.xr = readArray<Count>(obj, "xr", ijmt);
    sol.y = readArray<Count>(obj, "y", imt);
    sol.yr = readArray<Count>(obj, "yr", imt);
    sol.q = readArray<Count>(obj, "q", imt);
    sol.qr = readArray<Count>(obj, "qr", imt);
    sol.validate();
    return sol;
}

ordered_json toJson(GenSpec const &spec)
{
    ordered_json out;
    out["schema"] = kGenSpecSchema;
    out["dims"] = writeDims(spec.dims);
    out["seed"] = spec.seed;
    out["fleet_cap"] = rangeJson(spec.fleetCap);
    out["rental_cap"] = rangeJson(spec.rentalCap);
    out["demand"] = rangeJson(spec.demand);
    out["stop_cost_org"] = rangeJson(spec.stopCostOrg);
    out["stop_cost_rent"] = rangeJson(spec.stopCostRent);
    out["travel_cost_org"] = rangeJson(spec.travelCostOrg);
    out["travel_cost_rent"] = rangeJson(spec.travelCostRent);
    out["op_cost"] = rangeJson(spec.opCost);
    out["rent_cost"] = rangeJson(spec.rentCost);
    out["distance"] = rangeJson(spec.distance);
    out["emission_org"] = rangeJson(spec.emissionOrg);
    out["rental_emission_ratio"] = spec.rentalEmissionRatio;
    out["budget_slack"] = spec.budgetSlack;
    out["emission_cap"] = spec.emissionCap ? ordered_json(*spec.emissionCap) : ordered_json(nullptr);
    return out;
}

GenSpec genSpecFromJson(json const &obj)
{
    checkSchema(obj, kGenSpecSchema);
    if (!obj.is_object())
        throw InputError("generator spec must be a JSON object");

    GenSpec spec;
    if (obj.contains("dims"))
        spec.dims = readDims(obj);
    try
    {
        if (obj.contains("seed"))
            spec.seed = obj.at("seed").get<std::uint64_t>();
        readRange(obj, "fleet_cap", spec.fleetCap);
        readRange(obj, "rental_cap", spec.rentalCap);
        readRange(obj, "demand", spec.demand);
        readRange(obj, "stop_cost_org", spec.stopCostOrg);
        readRange(obj, "stop_cost_rent", spec.stopCostRent);
        readRange(obj, "travel_cost_org", spec.travelCostOrg);
        readRange(obj, "travel_cost_rent", spec.travelCostRent);
        readRange(obj, "op_cost", spec.opCost);
        readRange(obj, "rent_cost", spec.rentCost);
        readRange(obj, "distance", spec.distance);
        readRange(obj, "emission_org", spec.emissionOrg);
        if (obj.contains("rental_emission_ratio"))
            spec.rentalEmissionRatio = obj.at("rental_emission_ratio").get<double>();
        if (obj.contains("budget_slack"))
            spec.budgetSlack = obj.at("budget_slack").get<double>();
        if (obj.contains("emission_cap") && !obj.at("emission_cap").is_null())
            spec.emissionCap = obj.at("emission_cap").get<double>();
    }
    catch (json::exception const &e)
    {
        throw InputError(std::string("bad generator spec: ") + e.what());
    }

    try
    {
        spec.validate();
    }
    catch (ConfigError const &e)
    {
        throw InputError(e.what());
    }
    return spec;
}

json readJsonFile(std::string const &path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    try
    {
        return json::parse(in);
    }
    catch (json::parse_error const &e)
    {
        throw InputError(fmt::format("{}: {}", path, e.what()));
    }
}

void writeTextFile(std::string const &path, std::string const &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write " + path);
    out << text;
    if (!out)
        throw InputError("failed writing " + path);
}

std::string dumpJson(ordered_json const &json)
{
    return json.dump(2) + "\n";
}

Instance readInstanceFile(std::string const &path)
{
    try
    {
        return instanceFromJson(readJsonFile(path));
    }
    catch (json::exception const &e)
    {
        throw InputError(fmt::format("{}: {}", path, e.what()));
    }
}

Solution readSolutionFile(std::string const &path)
{
    try
    {
        return solutionFromJson(readJsonFile(path));
    }
    catch (json::exception const &e)
    {
        throw InputError(fmt::format("{}: {}", path, e.what()));
    }
}

}  // namespace fleetopt
