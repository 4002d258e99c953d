#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cforge/contract.hpp"

namespace cforge::aircraft {

/// SI units throughout: J/(kg K), kg/m^3, Pa, W, K.
struct PhysicalConstants {
  double C_f = 200.0;
  double C_a = 1000.0;
  double rho_f = 800.0;
  double dP_ep = 6.9e6;
  double eta_ep = 0.6;
  double eta_x = 0.6;
  double k_e = 5000.0;
  double eta_g = 0.9;
  double eta_l = 0.85;
  double T_ref = 300.0;  // splitter band scale

  /// Throws ConfigError unless every constant is positive and efficiencies are at most 1.
  void validate() const;
};

/// Nominal inputs and acceptable outputs of the system specification.
struct SpecLimits {
  double T_in_nominal = 288.0;
  double w_nom_nominal = 140000.0;
  double T_in_tol = 0.02;
  double T_a_tol = 0.02;
  double w_nom_tol = 0.05;
  double T_e_min = 300.0;
  double T_e_max = 330.0;
  double delta_t = 10.0;
};

/// Altitude in km, thrust in kg, flow rates in kg/s.
struct OperatingPoint {
  double alt = 0.0;
  double thrust = 0.0;
  double mdot_in = 0.0;
  double mdot_a = 0.0;

  /// Engine fuel burn, 0.7 * thrust / 3600.
  double mdot_e() const noexcept { return 0.7 * thrust / 3600.0; }
};

inline constexpr std::size_t kToleranceCount = 7;

struct ToleranceVector {
  double eps_ep_w = 0.0;
  double eps_ep_t = 0.0;
  double eps_g = 0.0;
  double eps_l_w = 0.0;
  double eps_l_h = 0.0;
  double eps_hl = 0.0;
  double eps_s = 0.0;

  static ToleranceVector uniform(double eps);
  static ToleranceVector from_array(const std::array<double, kToleranceCount>& values);
  std::array<double, kToleranceCount> to_array() const;
  static const std::array<std::string, kToleranceCount>& names();
};

enum class ComponentKind { Pump, Generator, Load, HeatLoad, Splitter, HxFixed, HxControlled, Engine };
enum class HxKind { Fixed, Controlled };

std::string_view to_string(HxKind kind) noexcept;
HxKind parse_hx_kind(std::string_view name);

/// Two-layer standard atmosphere: 288.15 - 6.5 alt up to 11 km, 216.65 K above.
/// Throws RangeError outside [0, 20] km.
double isa_air_temperature(double alt_km);

/// Nominal pump power, mdot_in dP / (rho eta_ep).
double pump_power(const OperatingPoint& op, const PhysicalConstants& k = {});
/// Nominal pump temperature rise, (1 - eta_ep) dP / (C_f rho eta_ep).
double pump_temperature_rise(const PhysicalConstants& k = {});
/// Fuel-air exchanger gain eta_x mdot_a C_a / ((mdot_in - mdot_e) C_f).
double hx_gain(const OperatingPoint& op, const PhysicalConstants& k = {});

/// Component contract with (1 +- eps) bands on each guarantee; a zero
/// tolerance yields an equality. Throws ConstructionError when
/// mdot_in <= mdot_e for components that carry the return flow.
PolyhedralContract make_component(ComponentKind kind, const OperatingPoint& op, const ToleranceVector& eps,
                                  const PhysicalConstants& k = {});

/// Pump, load, generator, engine, heat load and splitter; outputs T_e and T_s.
PolyhedralContract build_front(const OperatingPoint& op, const ToleranceVector& eps, const PhysicalConstants& k = {});
/// The front followed by the heat exchanger; inputs T_in, T_a, w_nom; outputs T_e, T_out.
PolyhedralContract build_sud(const OperatingPoint& op, const ToleranceVector& eps, HxKind hx,
                             const PhysicalConstants& k = {});

PolyhedralContract make_spec(const OperatingPoint& op, const SpecLimits& limits = {});
/// The environment contract (true, A_Spec): outputs T_in, T_a, w_nom.
PolyhedralContract make_environment(const OperatingPoint& op, const SpecLimits& limits = {});

struct InstanceResult {
  OperatingPoint op;
  ToleranceVector eps;
  HxKind hx = HxKind::Fixed;
  bool composed = false;  // SUD and environment composed with satisfiable assumptions
  bool refines_spec = false;
  std::string reason;  // why refinement failed, empty when it holds
  std::optional<VarRange> T_e;
  std::optional<VarRange> T_out;
};

struct EvaluationModel {
  PhysicalConstants constants;
  SpecLimits limits;
};

/// Refinement against the specification and output bounds under A_Spec.
/// T_e bounds are taken from the front of the system: the exchanger only adds
/// rows that admit a T_out for every T_s, so this is the same projection and
/// it does not depend on mdot_a at all.
InstanceResult evaluate_instance(const OperatingPoint& op, const ToleranceVector& eps, HxKind hx,
                                 const EvaluationModel& model = {});

inline constexpr double kViolationPenalty = 1e6;

/// ||1 - eps||_2 plus the bound term: the penalty when the instance does not
/// refine the specification, otherwise the squared slack to the limits, with
/// T_out limits taken around the nominal T_in.
double tolerance_cost(const ToleranceVector& eps, const InstanceResult& result, const SpecLimits& limits = {});

// ---- Exploration ----------------------------------------------------------

struct ExploreConfig {
  std::vector<double> altitudes = {5.0, 10.0, 15.0};
  std::vector<double> thrusts = {5000.0, 10000.0, 15000.0, 20000.0};
  std::vector<double> mdot_in = {4.0, 6.0, 8.0, 10.0, 12.0};
  std::vector<double> mdot_a = {0.2, 0.4, 0.8, 1.6};
  std::vector<HxKind> hx = {HxKind::Fixed, HxKind::Controlled};
  ToleranceVector eps = ToleranceVector::uniform(0.01);
  EvaluationModel model;
  unsigned jobs = 1;

  void validate() const;
};

/// Results ordered hx, altitude, thrust, mdot_in, mdot_a (last fastest).
std::vector<InstanceResult> explore_grid(const ExploreConfig& config);

/// (mdot_in, mdot_a) pairs that refine the specification at every (alt, thrust) regime.
std::vector<std::pair<double, double>> covering_pairs(const std::vector<InstanceResult>& results, HxKind hx);

/// Two mdot_in levels (low <= high) such that every regime has a refining
/// instance at one of them, with any mdot_a. Prefers the widest split.
std::optional<std::pair<double, double>> two_level_policy(const std::vector<InstanceResult>& results, HxKind hx);

/// explore.csv, bounds_<hx>.svg and valid_<hx>.svg.
void write_explore_outputs(const std::vector<InstanceResult>& results, const std::filesystem::path& dir);

// ---- Optimization ---------------------------------------------------------

struct OptimizeConfig {
  OperatingPoint op{15.0, 20000.0, 9.316, 0.429};
  HxKind hx = HxKind::Controlled;
  ToleranceVector start = ToleranceVector::uniform(0.01);
  double eps_min = 0.01;
  double eps_max = 0.10;
  std::size_t iterations = 2000;
  EvaluationModel model;
};

struct OptimizeStep {
  std::size_t iteration = 0;
  ToleranceVector eps;
  double cost = 0.0;
};

struct OptimizeResult {
  ToleranceVector best;
  double start_cost = 0.0;
  double best_cost = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool stayed_in_box = true;  // every evaluated vector was inside [eps_min, eps_max]
  InstanceResult best_instance;
  std::vector<OptimizeStep> trajectory;
};

OptimizeResult optimize_tolerances(const OptimizeConfig& config);

// ---- JSON -----------------------------------------------------------------

nlohmann::json instance_to_json(const InstanceResult& result);
nlohmann::json tolerances_to_json(const ToleranceVector& eps);
ToleranceVector tolerances_from_json(const nlohmann::json& j);
OperatingPoint operating_point_from_json(const nlohmann::json& j);
EvaluationModel model_from_json(const nlohmann::json& j);
ExploreConfig explore_config_from_json(const nlohmann::json& j);
OptimizeConfig optimize_config_from_json(const nlohmann::json& j);
nlohmann::json optimize_result_to_json(const OptimizeResult& result);

}  // namespace cforge::aircraft
