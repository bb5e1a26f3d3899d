#pragma once

#include "fleetopt/model.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>

namespace fleetopt {

struct IntRange {
    Count min = 0;
    Count max = 0;
};

struct RealRange {
    double min = 0.0;
    double max = 0.0;
};

/// Parameter ranges for synthetic instances. Every parameter is drawn
/// uniformly from its range; rental emission factors are the organisational
/// ones scaled by `rentalEmissionRatio`, and the budget is `budgetSlack`
/// times the cheapest operating-plus-rental spend that covers the demand.
struct GenSpec {
    Dimensions dims{2, 3, 2, 2};
    std::uint64_t seed = 0;

    IntRange fleetCap{1, 4};
    IntRange rentalCap{1, 4};
    IntRange demand{0, 2};

    RealRange stopCostOrg{10.0, 30.0};
    RealRange stopCostRent{10.0, 30.0};
    RealRange travelCostOrg{100.0, 300.0};
    RealRange travelCostRent{150.0, 400.0};
    RealRange opCost{40.0, 80.0};
    RealRange rentCost{80.0, 160.0};
    RealRange distance{50.0, 500.0};
    RealRange emissionOrg{0.8, 1.6};

    double rentalEmissionRatio = 0.7;
    double budgetSlack = 1.5;

    std::optional<double> emissionCap;

    /// Throws ConfigError on an inverted or negative range, a ratio outside
    /// (0, 1] or a slack below 1.
    void validate() const;
};

/// Independent, portable random stream for one parameter family.
///
/// The stream seed is SplitMix64(seed XOR family * golden-ratio constant) and
/// drives a std::mt19937_64, whose output sequence is fixed by the standard.
/// Uniform variates are produced here rather than by <random> distributions,
/// whose algorithms differ between standard libraries.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t family);

    /// Uniform on the closed range [lo, hi].
    Count uniformInt(Count lo, Count hi);
    /// Uniform on [lo, hi); returns lo exactly when lo == hi.
    double uniformReal(double lo, double hi);

    static std::uint64_t splitMix64(std::uint64_t value);

private:
    std::mt19937_64 engine_;
};

/// Parameter families; each draws from its own RandomStream so adding a
/// family never perturbs the others.
enum class Family : std::uint64_t {
    FleetCap = 1,
    RentalCap,
    Demand,
    StopCostOrg,
    StopCostRent,
    TravelCostOrg,
    TravelCostRent,
    OpCost,
    RentCost,
    Distance,
    EmissionOrg,
    TexasTravelRate,
    TexasRentalMarkup,
    TexasDispatch,
    TexasEmission,
};

/// Throws ConfigError on an invalid spec, or InputError when no demand draw
/// in 100 attempts fits the available vehicles.
Instance generate(GenSpec const &spec);

/// Smallest OPR q + Rent qr spend that lets trips cover the aggregated demand
/// of every period.
double minimumCoveringSpend(Instance const &instance);

inline constexpr std::size_t kTexasCities = 5;
inline constexpr std::size_t kTexasModes = 3;

std::array<char const *, kTexasCities> const &texasCityNames();
std::array<char const *, kTexasModes> const &texasModeNames();

/// Highway distance in km between two of the bundled cities.
double texasDistanceKm(std::size_t from, std::size_t to);

/// Ranges used by the Texas preset before its per-mode and per-route
/// overrides are applied.
GenSpec texasSpec(std::uint64_t seed, std::size_t periods = 2);

/// Five cities, three modes (truck, trailer, van) and `periods` periods.
/// Distances come from the bundled highway table; travel costs are a dispatch
/// charge plus a per-km rate times the distance, and emission factors are
/// drawn per mode.
Instance texasPreset(std::uint64_t seed, std::size_t periods = 2);

/// Reads the long CSV layout documented in docs/data-formats.md: a header
/// `parameter,i,j,m,t,value`, one `dims` row and one row per nonzero entry,
/// with 1-based indices and unused index columns left empty.
Instance loadLongCsv(std::istream &in);
Instance loadLongCsvFile(std::string const &path);

}  // namespace fleetopt
