#pragma once

#include "fleetopt/generator.hpp"
#include "fleetopt/model.hpp"

#include <json.hpp>
#include <string>

namespace fleetopt {

inline constexpr char const *kInstanceSchema = "fleetopt.instance/1";
inline constexpr char const *kSolutionSchema = "fleetopt.solution/1";
inline constexpr char const *kGenSpecSchema = "fleetopt.genspec/1";

// Instance and solution arrays are nested in index order: [i][j][m][t] for
// route quantities, [i][m][t] for per-origin quantities, [m] for emission
// factors and [i][j] for distances.

nlohmann::ordered_json toJson(Instance const &instance);
Instance instanceFromJson(nlohmann::json const &json);

nlohmann::ordered_json toJson(Solution const &solution);
Solution solutionFromJson(nlohmann::json const &json);

nlohmann::ordered_json toJson(GenSpec const &spec);
/// Missing range fields keep their GenSpec defaults.
GenSpec genSpecFromJson(nlohmann::json const &json);

/// Throws InputError when the file is missing or not valid JSON.
nlohmann::json readJsonFile(std::string const &path);
void writeTextFile(std::string const &path, std::string const &text);

/// Two-space indented JSON followed by a newline.
std::string dumpJson(nlohmann::ordered_json const &json);

Instance readInstanceFile(std::string const &path);
Solution readSolutionFile(std::string const &path);

}  // namespace fleetopt
