#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cforge/contract.hpp"

namespace cforge::mission {

enum class TaskKind { DSN, SBO, TCM_H, TCM_DV, CHRG };
enum class Viewpoint { Power, Science, Nav };

inline constexpr Viewpoint kViewpoints[] = {Viewpoint::Power, Viewpoint::Science, Viewpoint::Nav};

std::string_view to_string(TaskKind kind) noexcept;
std::string_view to_string(Viewpoint viewpoint) noexcept;

/// Parses task names; "TCM" expands to TCM_H followed by TCM_DV.
std::vector<TaskKind> parse_sequence(const std::vector<std::string>& names);

/// DSN, CHRG, SBO, TCM_H, TCM_DV.
std::vector<TaskKind> canonical_sequence();
/// The canonical sequence repeated four times.
std::vector<TaskKind> long_sequence();

/// A closed interval [min, max].
struct Range {
  double min = 0.0;
  double max = 0.0;
  double mid() const noexcept { return 0.5 * (min + max); }
};

/// Rates are in percent per second unless noted. DSN and CHRG navigation
/// noise is per task instance, not scaled by duration.
struct TaskHyperparameters {
  Range chrg_gen;
  Range dsn_cons;
  Range sbo_cons;
  Range tcm_h_cons;
  Range tcm_dv_cons;
  Range dsn_rate;
  Range sbo_sgen;
  Range dsn_noise;
  Range chrg_noise;
  Range sbo_imp;  // uncertainty reduction; a negative min allows deterioration
  Range tcm_dv_imp;
  Range tcm_dv_noise;

  /// Throws ConfigError when a range is inverted or a power/data rate is negative.
  void validate() const;
};

struct OperationalRequirements {
  double min_soc = 60.0;
  double min_step_duration = 10.0;
  double initial_data_volume = 80.0;
  double initial_uncertainty = 50.0;
};

/// soc_3, d_0, ...; the exit state of step k and the entry state of step k + 1.
std::string state_var(std::string_view base, std::size_t k);
/// dT_k, the duration of step k (k >= 1).
std::string duration_var(std::size_t k);

/// Contract of one task instance seen from one viewpoint. Entry variables
/// carry index step - 1, exit variables index step. Throws
/// std::invalid_argument when step is 0.
PolyhedralContract task_viewpoint_contract(TaskKind kind, Viewpoint viewpoint, const TaskHyperparameters& hyper,
                                           std::size_t step);

/// Raised when a step cannot be appended to a viewpoint chain.
class ScenarioIncompatibility : public IncompatibilityError {
 public:
  ScenarioIncompatibility(IncompatibilityDiagnostic diagnostic, std::size_t step, Viewpoint viewpoint);
  std::size_t step() const noexcept { return step_; }
  Viewpoint viewpoint() const noexcept { return viewpoint_; }
  const char* what() const noexcept override { return message_.c_str(); }

 private:
  std::size_t step_;
  Viewpoint viewpoint_;
  std::string message_;
};

/// Left fold of compose over the steps, keeping every intermediate state.
PolyhedralContract viewpoint_chain(const std::vector<TaskKind>& sequence, Viewpoint viewpoint,
                                   const TaskHyperparameters& hyper);

/// Merge of the three viewpoint chains.
PolyhedralContract build_scenario(const std::vector<TaskKind>& sequence, const TaskHyperparameters& hyper);

/// Outputs soc_1..soc_n with G soc_k >= min_soc. Inputs soc_0, d_0, u_0 and the
/// durations, with A pinning d_0 and u_0, bounding soc_0 to [min_soc, 100] and
/// each dT_k >= min_step_duration.
PolyhedralContract requirements_contract(const OperationalRequirements& req, std::size_t steps);

struct ScheduleResult {
  bool admissible = false;
  PolyhedralContract merged;
  VarRange initial_soc;
  std::vector<VarRange> soc_bounds;  // one per step exit; empty unless admissible
  double avg_soc_min = 0.0;
  double avg_soc_max = 0.0;
  double scenario_score = 0.0;
  double requirement_score = 0.0;
};

ScheduleResult check_schedulable(const PolyhedralContract& scenario, const OperationalRequirements& req,
                                 std::size_t steps);

struct Scores {
  double scenario = 0.0;
  double requirement = 0.0;
};

/// Scenario score: mean of signed range midpoints, positive for generation,
/// downlink and navigation improvement, negative for consumption, data
/// generation and noise. Requirement score: mean of the four requirement values.
Scores score(const TaskHyperparameters& hyper, const OperationalRequirements& req);

/// build_scenario, check_schedulable and score in one call.
ScheduleResult evaluate_schedule(const std::vector<TaskKind>& sequence, const TaskHyperparameters& hyper,
                                 const OperationalRequirements& req);

}  // namespace cforge::mission
