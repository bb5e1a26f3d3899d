#include "fleetopt/generator.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

namespace fleetopt {

namespace {

constexpr int kDemandAttempts = 100;

void requireRange(IntRange const &range, char const *name)
{
    if (range.min < 0 || range.min > range.max)
        throw ConfigError(fmt::format("{} range [{}, {}] is invalid", name, range.min, range.max));
}

void requireRange(RealRange const &range, char const *name)
{
    if (!std::isfinite(range.min) || !std::isfinite(range.max) || range.min < 0 || range.min > range.max)
        throw ConfigError(fmt::format("{} range [{}, {}] is invalid", name, range.min, range.max));
}

std::vector<Count> drawInts(RandomStream &rng, std::size_t count, IntRange const &range)
{
    std::vector<Count> out(count);
    for (auto &v : out)
        v = rng.uniformInt(range.min, range.max);
    return out;
}

std::vector<double> drawReals(RandomStream &rng, std::size_t count, RealRange const &range)
{
    std::vector<double> out(count);
    for (auto &v : out)
        v = rng.uniformReal(range.min, range.max);
    return out;
}

std::vector<Count> periodDemand(Instance const &inst)
{
    auto const &d = inst.dims;
    std::vector<Count> total(d.periods, 0);
    for (std::size_t i = 0; i != d.origins; ++i)
        for (std::size_t j = 0; j != d.destinations; ++j)
            for (std::size_t m = 0; m != d.modes; ++m)
                for (std::size_t t = 0; t != d.periods; ++t)
                    total[t] += inst.demand[d.ijmt(i, j, m, t)];
    return total;
}

bool demandCoverable(Instance const &inst)
{
    auto const &d = inst.dims;
    auto const required = periodDemand(inst);
    for (std::size_t t = 0; t != d.periods; ++t)
    {
        Count available = 0;
        for (std::size_t i = 0; i != d.origins; ++i)
            for (std::size_t m = 0; m != d.modes; ++m)
                available += inst.fleetCap[d.imt(i, m, t)] + inst.rentalCap[d.imt(i, m, t)];
        if (required[t] > available)
            return false;
    }
    return true;
}

// Approximate Interstate driving distances (km). Row/column order follows
// texasCityNames().
constexpr double kTexasDistanceKm[kTexasCities][kTexasCities] = {
    //  Dallas Houston SanAnt Austin FtWorth
    {0.0, 385.0, 441.0, 314.0, 51.0},    // Dallas
    {385.0, 0.0, 317.0, 266.0, 423.0},   // Houston
    {441.0, 317.0, 0.0, 129.0, 428.0},   // San Antonio
    {314.0, 266.0, 129.0, 0.0, 306.0},   // Austin
    {51.0, 423.0, 428.0, 306.0, 0.0},    // Fort Worth
};

struct TexasMode {
    RealRange ratePerKm;    // organisational marginal cost, USD per km
    RealRange emissionKgKm; // kg CO2 per km
};

// Per-km rates scale the ~1.40 USD/km all-in marginal trucking cost of the
// ATRI 2023 operational-cost update (2.251 USD/mile for 2022); emission
// factors are diesel tailpipe figures per vehicle-km.
constexpr TexasMode kTexasModeData[kTexasModes] = {
    {{1.30, 1.50}, {0.90, 1.10}},  // truck
    {{1.50, 1.75}, {1.20, 1.50}},  // trailer
    {{0.60, 0.80}, {0.25, 0.35}},  // van
};

constexpr RealRange kTexasRentalMarkup{1.10, 1.30};
constexpr RealRange kTexasDispatch{40.0, 80.0};

}  // namespace

void GenSpec::validate() const
{
    dims.validate();
    requireRange(fleetCap, "fleet_cap");
    requireRange(rentalCap, "rental_cap");
    requireRange(demand, "demand");
    requireRange(stopCostOrg, "stop_cost_org");
    requireRange(stopCostRent, "stop_cost_rent");
    requireRange(travelCostOrg, "travel_cost_org");
    requireRange(travelCostRent, "travel_cost_rent");
    requireRange(opCost, "op_cost");
    requireRange(rentCost, "rent_cost");
    requireRange(distance, "distance");
    requireRange(emissionOrg, "emission_org");

    if (!(rentalEmissionRatio > 0.0 && rentalEmissionRatio <= 1.0))
        throw ConfigError(fmt::format("rental emission ratio {} must lie in (0, 1]", rentalEmissionRatio));
    if (!(budgetSlack >= 1.0) || !std::isfinite(budgetSlack))
        throw ConfigError(fmt::format("budget slack {} must be at least 1", budgetSlack));
    if (emissionCap && (std::isnan(*emissionCap) || *emissionCap < 0))
        throw ConfigError("emission cap must be nonnegative");
}

std::uint64_t RandomStream::splitMix64(std::uint64_t value)
{
    value += 0x9E3779B97F4A7C15ULL;
    value = (value ^ (value >> 30)) * 0xBF58476D1CE4E5B9ULL;
    value = (value ^ (value >> 27)) * 0x94D049BB133111EBULL;
    return value ^ (value >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t family)
    : engine_(splitMix64(seed ^ (family * 0x9E3779B97F4A7C15ULL)))
{
}

Count RandomStream::uniformInt(Count lo, Count hi)
{
    if (lo >= hi)
        return lo;

    auto const span = static_cast<std::uint64_t>(hi - lo) + 1;
    // Rejection keeps the draw unbiased.
    auto const limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t draw = engine_();
    while (draw >= limit)
        draw = engine_();
    return lo + static_cast<Count>(draw % span);
}

double RandomStream::uniformReal(double lo, double hi)
{
    auto const unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    if (lo == hi)
        return lo;
    return lo + (hi - lo) * unit;
}

double minimumCoveringSpend(Instance const &instance)
{
    auto const &d = instance.dims;
    auto const required = periodDemand(instance);

    double total = 0.0;
    for (std::size_t t = 0; t != d.periods; ++t)
    {
        // Each trip consumes one vehicle; budget cost does not depend on the
        // destination, so the cheapest vehicles cover the period.
        std::vector<std::pair<double, Count>> offers;
        for (std::size_t i = 0; i != d.origins; ++i)
            for (std::size_t m = 0; m != d.modes; ++m)
            {
                auto const k = d.imt(i, m, t);
                offers.emplace_back(instance.opCost[k], instance.fleetCap[k]);
                offers.emplace_back(instance.rentCost[k], instance.rentalCap[k]);
            }
        std::stable_sort(offers.begin(), offers.end(),
                         [](auto const &a, auto const &b) { return a.first < b.first; });

        auto need = required[t];
        for (auto const &[price, count] : offers)
        {
            if (need == 0)
                break;
            auto const take = std::min(need, count);
            total += price * static_cast<double>(take);
            need -= take;
        }
    }
    return total;
}

Instance generate(GenSpec const &spec)
{
    spec.validate();

    auto const &d = spec.dims;
    auto inst = Instance::zeros(d);

    auto stream = [&](Family family) { return RandomStream(spec.seed, static_cast<std::uint64_t>(family)); };

    {
        auto rng = stream(Family::FleetCap);
        inst.fleetCap = drawInts(rng, d.imtSize(), spec.fleetCap);
    }
    {
        auto rng = stream(Family::RentalCap);
        inst.rentalCap = drawInts(rng, d.imtSize(), spec.rentalCap);
    }
    {
        auto rng = stream(Family::Demand);
        int attempt = 0;
        for (; attempt != kDemandAttempts; ++attempt)
        {
            inst.demand = drawInts(rng, d.ijmtSize(), spec.demand);
            if (demandCoverable(inst))
                break;
        }
        if (attempt == kDemandAttempts)
            throw InputError(fmt::format("no demand draw in {} attempts fits the available vehicles",
                                         kDemandAttempts));
    }
    {
        auto rng = stream(Family::StopCostOrg);
        inst.stopCostOrg = drawReals(rng, d.imtSize(), spec.stopCostOrg);
    }
    {
        auto rng = stream(Family::StopCostRent);
        inst.stopCostRent = drawReals(rng, d.imtSize(), spec.stopCostRent);
    }
    {
        auto rng = stream(Family::TravelCostOrg);
        inst.travelCostOrg = drawReals(rng, d.ijmtSize(), spec.travelCostOrg);
    }
    {
        auto rng = stream(Family::TravelCostRent);
        inst.travelCostRent = drawReals(rng, d.ijmtSize(), spec.travelCostRent);
    }
    {
        auto rng = stream(Family::OpCost);
        inst.opCost = drawReals(rng, d.imtSize(), spec.opCost);
    }
    {
        auto rng = stream(Family::RentCost);
        inst.rentCost = drawReals(rng, d.imtSize(), spec.rentCost);
    }
    {
        auto rng = stream(Family::Distance);
        if (d.origins == d.destinations)
        {
            for (std::size_t i = 0; i != d.origins; ++i)
                for (std::size_t j = i + 1; j != d.destinations; ++j)
                {
                    auto const value = rng.uniformReal(spec.distance.min, spec.distance.max);
                    inst.distance[d.ij(i, j)] = value;
                    inst.distance[d.ij(j, i)] = value;
                }
        }
        else
            inst.distance = drawReals(rng, d.ijSize(), spec.distance);
    }
    {
        auto rng = stream(Family::EmissionOrg);
        inst.emissionOrg = drawReals(rng, d.modes, spec.emissionOrg);
        for (std::size_t m = 0; m != d.modes; ++m)
            inst.emissionRent[m] = spec.rentalEmissionRatio * inst.emissionOrg[m];
    }

    inst.budget = spec.budgetSlack * minimumCoveringSpend(inst);
    inst.emissionCap = spec.emissionCap;
    inst.validate();
    return inst;
}

std::array<char const *, kTexasCities> const &texasCityNames()
{
    static constexpr std::array<char const *, kTexasCities> names{"Dallas", "Houston", "San Antonio", "Austin",
                                                                  "Fort Worth"};
    return names;
}

std::array<char const *, kTexasModes> const &texasModeNames()
{
    static constexpr std::array<char const *, kTexasModes> names{"truck", "trailer", "van"};
    return names;
}

double texasDistanceKm(std::size_t from, std::size_t to)
{
    if (from >= kTexasCities || to >= kTexasCities)
        throw DimensionError("city index out of range");
    return kTexasDistanceKm[from][to];
}

GenSpec texasSpec(std::uint64_t seed, std::size_t periods)
{
    GenSpec spec;
    spec.dims = {kTexasCities, kTexasCities, kTexasModes, periods};
    spec.seed = seed;
    spec.fleetCap = {1, 4};
    spec.rentalCap = {1, 4};
    spec.demand = {0, 1};
    spec.stopCostOrg = {20.0, 60.0};
    spec.stopCostRent = {20.0, 60.0};
    // Travel costs are replaced by dispatch + rate * distance below.
    spec.travelCostOrg = {0.0, 0.0};
    spec.travelCostRent = {0.0, 0.0};
    spec.opCost = {150.0, 300.0};
    spec.rentCost = {250.0, 450.0};
    spec.distance = {0.0, 0.0};
    spec.emissionOrg = {0.25, 1.5};
    spec.rentalEmissionRatio = 0.7;
    spec.budgetSlack = 1.5;
    return spec;
}

Instance texasPreset(std::uint64_t seed, std::size_t periods)
{
    auto const spec = texasSpec(seed, periods);
    auto inst = generate(spec);
    auto const &d = inst.dims;

    for (std::size_t i = 0; i != d.origins; ++i)
        for (std::size_t j = 0; j != d.destinations; ++j)
            inst.distance[d.ij(i, j)] = kTexasDistanceKm[i][j];

    RandomStream emission(seed, static_cast<std::uint64_t>(Family::TexasEmission));
    for (std::size_t m = 0; m != d.modes; ++m)
    {
        inst.emissionOrg[m] = emission.uniformReal(kTexasModeData[m].emissionKgKm.min, kTexasModeData[m].emissionKgKm.max);
        inst.emissionRent[m] = spec.rentalEmissionRatio * inst.emissionOrg[m];
    }

    RandomStream rate(seed, static_cast<std::uint64_t>(Family::TexasTravelRate));
    RandomStream markup(seed, static_cast<std::uint64_t>(Family::TexasRentalMarkup));
    RandomStream dispatch(seed, static_cast<std::uint64_t>(Family::TexasDispatch));
    for (std::size_t i = 0; i != d.origins; ++i)
        for (std::size_t j = 0; j != d.destinations; ++j)
            for (std::size_t m = 0; m != d.modes; ++m)
                for (std::size_t t = 0; t != d.periods; ++t)
                {
                    auto const k = d.ijmt(i, j, m, t);
                    auto const km = kTexasDistanceKm[i][j];
                    auto const perKm = rate.uniformReal(kTexasModeData[m].ratePerKm.min, kTexasModeData[m].ratePerKm.max);
                    auto const fixed = dispatch.uniformReal(kTexasDispatch.min, kTexasDispatch.max);
                    auto const rentalFactor = markup.uniformReal(kTexasRentalMarkup.min, kTexasRentalMarkup.max);
                    inst.travelCostOrg[k] = fixed + perKm * km;
                    inst.travelCostRent[k] = rentalFactor * (fixed + perKm * km);
                }

    inst.validate();
    return inst;
}

Instance loadLongCsv(std::istream &in)
{
    std::string line;
    std::size_t lineNo = 0;

    auto fields = [](std::string const &text) {
        std::vector<std::string> out;
        std::stringstream ss(text);
        std::string cell;
        while (std::getline(ss, cell, ','))
        {
            auto const first = cell.find_first_not_of(" \t\r");
            auto const last = cell.find_last_not_of(" \t\r");
            out.push_back(first == std::string::npos ? std::string() : cell.substr(first, last - first + 1));
        }
        if (!text.empty() && text.back() == ',')
            out.emplace_back();
        return out;
    };

    auto parseIndex = [&](std::string const &cell, std::size_t extent, char const *what) -> std::size_t {
        if (cell.empty())
            throw InputError(fmt::format("line {}: missing {} index", lineNo, what));
        std::size_t value = 0;
        try
        {
            value = std::stoul(cell);
        }
        catch (std::exception const &)
        {
            throw InputError(fmt::format("line {}: bad {} index '{}'", lineNo, what, cell));
        }
        if (value < 1 || value > extent)
            throw InputError(fmt::format("line {}: {} index {} outside 1..{}", lineNo, what, value, extent));
        return value - 1;
    };

    auto parseValue = [&](std::string const &cell) {
        try
        {
            std::size_t used = 0;
            auto const v = std::stod(cell, &used);
            if (used != cell.size())
                throw std::invalid_argument(cell);
            return v;
        }
        catch (std::exception const &)
        {
            throw InputError(fmt::format("line {}: bad value '{}'", lineNo, cell));
        }
    };

    auto toCount = [&](double v) {
        if (v != std::floor(v))
            throw InputError(fmt::format("line {}: expected an integer, got {}", lineNo, v));
        return static_cast<Count>(v);
    };

    std::optional<Instance> inst;
    while (std::getline(in, line))
    {
        ++lineNo;
        if (line.empty() || line[0] == '#')
            continue;
        auto const cells = fields(line);
        if (cells.size() != 6)
            throw InputError(fmt::format("line {}: expected 6 columns, got {}", lineNo, cells.size()));
        auto const &param = cells[0];
        if (param == "parameter")
            continue;

        if (param == "dims")
        {
            Dimensions dims;
            try
            {
                dims = {std::stoul(cells[1]), std::stoul(cells[2]), std::stoul(cells[3]), std::stoul(cells[4])};
            }
            catch (std::exception const &)
            {
                throw InputError(fmt::format("line {}: bad dims row", lineNo));
            }
            inst = Instance::zeros(dims);
            continue;
        }
        if (!inst)
            throw InputError(fmt::format("line {}: the dims row must come first", lineNo));

        auto const &d = inst->dims;
        auto const value = parseValue(cells[5]);
        auto imt = [&] {
            return d.imt(parseIndex(cells[1], d.origins, "i"), parseIndex(cells[3], d.modes, "m"),
                         parseIndex(cells[4], d.periods, "t"));
        };
        auto ijmt = [&] {
            return d.ijmt(parseIndex(cells[1], d.origins, "i"), parseIndex(cells[2], d.destinations, "j"),
                          parseIndex(cells[3], d.modes, "m"), parseIndex(cells[4], d.periods, "t"));
        };

        if (param == "fleet_cap")
            inst->fleetCap[imt()] = toCount(value);
        else if (param == "rental_cap")
            inst->rentalCap[imt()] = toCount(value);
        else if (param == "demand")
            inst->demand[ijmt()] = toCount(value);
        else if (param == "stop_cost_org")
            inst->stopCostOrg[imt()] = value;
        else if (param == "stop_cost_rent")
            inst->stopCostRent[imt()] = value;
        else if (param == "travel_cost_org")
            inst->travelCostOrg[ijmt()] = value;
        else if (param == "travel_cost_rent")
            inst->travelCostRent[ijmt()] = value;
        else if (param == "op_cost")
            inst->opCost[imt()] = value;
        else if (param == "rent_cost")
            inst->rentCost[imt()] = value;
        else if (param == "emission_org")
            inst->emissionOrg[parseIndex(cells[3], d.modes, "m")] = value;
        else if (param == "emission_rent")
            inst->emissionRent[parseIndex(cells[3], d.modes, "m")] = value;
        else if (param == "distance")
            inst->distance[d.ij(parseIndex(cells[1], d.origins, "i"), parseIndex(cells[2], d.destinations, "j"))]
                = value;
        else if (param == "budget")
            inst->budget = value;
        else if (param == "emission_cap")
            inst->emissionCap = value;
        else
            throw InputError(fmt::format("line {}: unknown parameter '{}'", lineNo, param));
    }

    if (!inst)
        throw InputError("no dims row found");
    inst->validate();
    return *inst;
}

Instance loadLongCsvFile(std::string const &path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    return loadLongCsv(in);
}

}  // namespace fleetopt
