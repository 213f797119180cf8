#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "smc/controller.hpp"
#include "smc/dynamics.hpp"
#include "smc/scenarios.hpp"
#include "smc/simulator.hpp"

namespace smc {

struct OutputSpec {
  std::string dir = ".";
  std::string stem = "run";

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct RunConfig {
  ScenarioSpec scenario;
  ControllerConfig controller;
  IntegratorConfig integrator;
  DisturbanceSignal disturbance;
  DisturbanceSignal unmatched;
  double eps_band = 1e-3;
  OutputSpec output;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline constexpr const char* kSeedEnvVar = "SMC_SEED";

/// Parses and validates a config document. Missing optional fields take
/// their defaults; every problem is reported with its field path.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);

/// Reads a config file and applies the SMC_SEED override, if set.
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& cfg);
void write_config(const RunConfig& cfg, const std::filesystem::path& path);

// Replaces the seed of both disturbance signals.
void apply_seed_override(RunConfig& cfg, std::optional<std::string> env_value);

/// Returns a copy of cfg with the numeric field at a dotted path
/// ("controller.n", "scenario.initial_state.0") set to value.
RunConfig with_parameter(const RunConfig& cfg, const std::string& path, double value);

Scenario build_scenario(const RunConfig& cfg);

}  // namespace smc
