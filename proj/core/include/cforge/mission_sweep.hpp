#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cforge/mission.hpp"

namespace cforge::mission {

/// Sampling space of one capability range: the range is
/// [mean - dev, mean + dev] with mean and dev drawn from these intervals.
struct CapabilitySpace {
  Range mean;
  Range dev;
};

inline constexpr std::size_t kCapabilityCount = 12;

/// Capability names in the order of TaskHyperparameters' fields.
const std::array<std::string, kCapabilityCount>& capability_names();

struct SweepConfig {
  std::vector<TaskKind> sequence = canonical_sequence();
  std::array<CapabilitySpace, kCapabilityCount> capabilities;
  Range min_soc{60.0, 90.0};
  Range min_step_duration{10.0, 50.0};
  Range initial_data_volume{60.0, 100.0};
  Range initial_uncertainty{40.0, 90.0};
  std::size_t scenarios = 20;
  std::size_t requirement_sets = 20;
  std::uint64_t seed = 2024;
  unsigned jobs = 1;
  bool svg = false;

  SweepConfig();
};

/// Missing keys keep their defaults. Throws ConfigError on malformed input.
SweepConfig sweep_config_from_json(const nlohmann::json& j);
nlohmann::json sweep_config_to_json(const SweepConfig& config);

struct SweepRow {
  std::size_t scenario = 0;
  std::size_t requirement = 0;
  ScheduleResult result;
};

struct SweepResult {
  std::vector<TaskHyperparameters> scenarios;
  std::vector<OperationalRequirements> requirements;
  std::vector<std::string> scenario_errors;  // empty when the scenario composed
  std::vector<SweepRow> rows;                // scenario-major order
  std::size_t admissible = 0;
  double seconds = 0.0;

  double admissibility_rate() const {
    return rows.empty() ? 0.0 : static_cast<double>(admissible) / static_cast<double>(rows.size());
  }
};

/// Hyperparameter sets for the scenarios, one LHS design over the 24 (mean, dev) dimensions.
std::vector<TaskHyperparameters> sample_scenarios(const SweepConfig& config);
std::vector<OperationalRequirements> sample_requirements(const SweepConfig& config);

SweepResult run_sweep(const SweepConfig& config);

/// results.csv, bounds.json, scores.svg and, if config.svg, one bounds_S_R.svg per admissible pair.
void write_sweep_outputs(const SweepResult& result, const SweepConfig& config, const std::filesystem::path& dir);

nlohmann::json schedule_to_json(const ScheduleResult& result);
nlohmann::json hyperparameters_to_json(const TaskHyperparameters& hyper);
TaskHyperparameters hyperparameters_from_json(const nlohmann::json& j);
OperationalRequirements requirements_from_json(const nlohmann::json& j);
nlohmann::json requirements_to_json(const OperationalRequirements& req);

std::string soc_bounds_svg(const ScheduleResult& result, const std::string& title);

}  // namespace cforge::mission
