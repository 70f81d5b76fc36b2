#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace rhk {

// One experiment: a named scenario plus its parameters.  Numeric parameters
// may arrive as JSON numbers or as decimal strings; both parse through
// strtod, so a config round-trips bit-exactly between languages.
struct ExperimentConfig {
  std::string scenario;
  nlohmann::json params;  // scenario-specific knobs
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::filesystem::path out_dir;
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& file);

// Names of all registered scenarios.
std::vector<std::string> scenario_names();

// Every constraint violation in the config (empty = admissible).  Pure.
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

// One evaluated acceptance criterion of a scenario run.
struct Criterion {
  std::string id;
  bool pass = false;
  double observed = 0.0;
  std::string requirement;
};

struct ScenarioResult {
  std::vector<Criterion> criteria;
  bool all_pass() const {
    for (const auto& c : criteria)
      if (!c.pass) return false;
    return true;
  }
};

// Exit codes shared by run_scenario and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCriterionFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitResourceError = 3;

// Runs the scenario, writing all artifacts (CSV outputs, criteria.json,
// manifest.json) under cfg.out_dir.  Stochastic outputs are a pure function
// of (config, seed) at any worker count; partial files carry a .partial
// suffix until atomically renamed.
int run_scenario(const ExperimentConfig& cfg);

// In-process variant used by tests; does not touch the filesystem unless
// out_dir is set.
ScenarioResult run_scenario_result(const ExperimentConfig& cfg);

// Tidy long-format CSV bundles for external plotting, derived from a
// completed scenario directory.  MissingDataError when the directory lacks a
// manifest or the artifacts it references.
void emit_plotdata(const std::filesystem::path& scenario_dir);

}  // namespace rhk
