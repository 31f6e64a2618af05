// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cps {

using Json = nlohmann::ordered_json;

struct RunOptions {
  std::optional<std::uint64_t> seed;
  /// One entry applies to every refined axis, otherwise one per axis.
  std::optional<std::vector<int>> resolution;
  bool strict = false;
  /// Task category filter: identity, charge, bracket, dress, komar; empty
  /// runs everything.
  std::string category;
};

/// Parses, validates and runs a scenario file. Report layout:
/// {meta, config_echo, results[], pass}.
Json run_scenario(const std::string& path, const RunOptions& options = {});
Json run_scenario_text(const std::string& text, const RunOptions& options = {});

/// Runs every task at each rung of refine.ladder and fits log-log slopes.
Json convergence_study(const std::string& path, const RunOptions& options = {});

/// True when every strict result passed.
bool strict_tasks_pass(const Json& report);

struct ScenarioInfo {
  std::string file;
  std::string name;
  std::string description;
};
std::vector<ScenarioInfo> list_scenarios(const std::string& directory);

/// Least-squares slope of log(residual) against log(h); nullopt when fewer
/// than two positive residuals.
std::optional<double> fit_order(const std::vector<double>& h,
                                const std::vector<double>& residual);

}  // namespace cps
