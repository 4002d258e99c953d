#include "cforge/aircraft.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cforge/contract_json.hpp"
#include "cforge/errors.hpp"
#include "cforge/nelder_mead.hpp"
#include "cforge/parallel.hpp"
#include "cforge/parser.hpp"
#include "cforge/svg.hpp"

namespace cforge::aircraft {
namespace {

using nlohmann::json;

LinearExpr var(const char* name, double c = 1.0) { return LinearExpr::variable(name, c); }

// lhs within (1 +- eps) * rhs, for a non-negative rhs. Zero tolerance gives an equality.
void add_relative_band(TermList& g, const LinearExpr& lhs, const LinearExpr& rhs, double eps) {
  if (eps == 0.0) {
    g.push_back(LinearTerm::eq(lhs - rhs));
    return;
  }
  g.push_back(LinearTerm::leq(lhs - (1.0 + eps) * rhs));
  g.push_back(LinearTerm::leq((1.0 - eps) * rhs - lhs));
}

// |lhs| <= width.
void add_absolute_band(TermList& g, const LinearExpr& lhs, double width) {
  if (width == 0.0) {
    g.push_back(LinearTerm::eq(lhs));
    return;
  }
  g.push_back(LinearTerm::leq(lhs, width));
  g.push_back(LinearTerm::leq(-1.0 * lhs, width));
}

void require_return_flow(const OperatingPoint& op) {
  if (!(op.mdot_in > op.mdot_e())) {
    throw ConstructionError("fuel flow mdot_in = " + format_number(op.mdot_in) +
                            " kg/s does not exceed the engine burn mdot_e = " + format_number(op.mdot_e()) + " kg/s");
  }
}

void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be positive");
}

PolyhedralContract compose_all(const std::vector<PolyhedralContract>& parts) {
  PolyhedralContract out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = compose(out, parts[i]);
  return out;
}

PolyhedralContract attach_environment(const PolyhedralContract& env, const PolyhedralContract& system) {
  return compose(env, system, env.output_set());
}

std::string list_terms(const TermList& terms) {
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += "; ";
    out += render_term(t);
  }
  return out;
}

std::vector<double> require_list(const json& j, const char* key, std::vector<double> fallback) {
  if (!j.contains(key)) return fallback;
  auto v = j.at(key).get<std::vector<double>>();
  if (v.empty()) throw ConfigError(std::string(key) + " must not be empty");
  return v;
}

double get_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

std::string csv_number(double v) {
  std::ostringstream o;
  o.precision(17);
  o << v;
  return o.str();
}

}  // namespace

void PhysicalConstants::validate() const {
  check_positive(C_f, "C_f");
  check_positive(C_a, "C_a");
  check_positive(rho_f, "rho_f");
  check_positive(dP_ep, "dP_ep");
  check_positive(eta_ep, "eta_ep");
  check_positive(eta_x, "eta_x");
  check_positive(k_e, "k_e");
  check_positive(eta_g, "eta_g");
  check_positive(eta_l, "eta_l");
  check_positive(T_ref, "T_ref");
  for (double eta : {eta_ep, eta_x, eta_g, eta_l}) {
    if (eta > 1.0) throw ConfigError("efficiencies must not exceed 1");
  }
}

ToleranceVector ToleranceVector::uniform(double eps) { return from_array({eps, eps, eps, eps, eps, eps, eps}); }

ToleranceVector ToleranceVector::from_array(const std::array<double, kToleranceCount>& v) {
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
}

std::array<double, kToleranceCount> ToleranceVector::to_array() const {
  return {eps_ep_w, eps_ep_t, eps_g, eps_l_w, eps_l_h, eps_hl, eps_s};
}

const std::array<std::string, kToleranceCount>& ToleranceVector::names() {
  static const std::array<std::string, kToleranceCount> n = {"eps_ep_w", "eps_ep_t", "eps_g", "eps_l_w",
                                                             "eps_l_h",  "eps_hl",   "eps_s"};
  return n;
}

std::string_view to_string(HxKind kind) noexcept { return kind == HxKind::Fixed ? "fixed" : "controlled"; }

HxKind parse_hx_kind(std::string_view name) {
  if (name == "fixed" || name == "HX_FIXED") return HxKind::Fixed;
  if (name == "controlled" || name == "HX_CONTROLLED") return HxKind::Controlled;
  throw ConfigError("unknown heat exchanger kind '" + std::string(name) + "'");
}

double isa_air_temperature(double alt_km) {
  if (!(alt_km >= 0.0 && alt_km <= 20.0)) {
    throw RangeError("altitude " + format_number(alt_km) + " km is outside [0, 20] km");
  }
  return alt_km <= 11.0 ? 288.15 - 6.5 * alt_km : 216.65;
}

double pump_power(const OperatingPoint& op, const PhysicalConstants& k) {
  return op.mdot_in * k.dP_ep / (k.rho_f * k.eta_ep);
}

double pump_temperature_rise(const PhysicalConstants& k) {
  return (1.0 - k.eta_ep) * k.dP_ep / (k.C_f * k.rho_f * k.eta_ep);
}

double hx_gain(const OperatingPoint& op, const PhysicalConstants& k) {
  require_return_flow(op);
  return k.eta_x * op.mdot_a * k.C_a / ((op.mdot_in - op.mdot_e()) * k.C_f);
}

PolyhedralContract make_component(ComponentKind kind, const OperatingPoint& op, const ToleranceVector& eps,
                                  const PhysicalConstants& k) {
  TermList a;
  TermList g;
  switch (kind) {
    case ComponentKind::Pump:
      add_relative_band(g, var("w_ep"), LinearExpr::number(pump_power(op, k)), eps.eps_ep_w);
      add_relative_band(g, var("T_ep") - var("T_in"), LinearExpr::number(pump_temperature_rise(k)), eps.eps_ep_t);
      return PolyhedralContract({"T_in"}, {"T_ep", "w_ep"}, a, g);
    case ComponentKind::Load:
      add_relative_band(g, var("w_l"), var("w_nom"), eps.eps_l_w);
      add_relative_band(g, var("h_l"), var("w_l", 1.0 - k.eta_l), eps.eps_l_h);
      return PolyhedralContract({"w_nom"}, {"w_l", "h_l"}, a, g);
    case ComponentKind::Generator: {
      const double f = 1.0 / k.eta_g - 1.0;
      add_relative_band(g, var("h_g"), var("w_ep", f) + var("w_l", f), eps.eps_g);
      return PolyhedralContract({"w_ep", "w_l"}, {"h_g"}, a, g);
    }
    case ComponentKind::Engine:
      g.push_back(LinearTerm::eq(var("h_e"), k.k_e * op.mdot_e()));
      return PolyhedralContract({}, {"h_e"}, a, g);
    case ComponentKind::HeatLoad: {
      check_positive(op.mdot_in, "mdot_in");
      const double f = 1.0 / (op.mdot_in * k.C_f);
      add_relative_band(g, var("T_hl") - var("T_ep"), var("h_g", f) + var("h_l", f) + var("h_e", f), eps.eps_hl);
      return PolyhedralContract({"T_ep", "h_g", "h_l", "h_e"}, {"T_hl"}, a, g);
    }
    case ComponentKind::Splitter:
      require_return_flow(op);
      add_absolute_band(g, var("T_e") - var("T_hl"), eps.eps_s * k.T_ref);
      add_absolute_band(g, var("T_s") - var("T_hl"), eps.eps_s * k.T_ref);
      return PolyhedralContract({"T_hl"}, {"T_e", "T_s"}, a, g);
    case ComponentKind::HxFixed: {
      const double kappa = hx_gain(op, k);
      // T_s - T_out = kappa (T_s - T_a)
      g.push_back(LinearTerm::eq(var("T_out") - var("T_s", 1.0 - kappa) - var("T_a", kappa)));
      return PolyhedralContract({"T_s", "T_a"}, {"T_out"}, a, g);
    }
    case ComponentKind::HxControlled:
      require_return_flow(op);
      a.push_back(LinearTerm::leq(var("T_a") - var("T_s"), -10.0));
      add_absolute_band(g, var("T_out") - var("T_in"), 5.0);
      return PolyhedralContract({"T_s", "T_a", "T_in"}, {"T_out"}, a, g);
  }
  throw std::logic_error("unknown component kind");
}

PolyhedralContract build_front(const OperatingPoint& op, const ToleranceVector& eps, const PhysicalConstants& k) {
  k.validate();
  using CK = ComponentKind;
  std::vector<PolyhedralContract> parts;
  for (auto kind : {CK::Pump, CK::Load, CK::Generator, CK::Engine, CK::HeatLoad, CK::Splitter}) {
    parts.push_back(make_component(kind, op, eps, k));
  }
  return compose_all(parts);
}

PolyhedralContract build_sud(const OperatingPoint& op, const ToleranceVector& eps, HxKind hx,
                             const PhysicalConstants& k) {
  const auto hx_kind = hx == HxKind::Fixed ? ComponentKind::HxFixed : ComponentKind::HxControlled;
  return compose(build_front(op, eps, k), make_component(hx_kind, op, eps, k));
}

PolyhedralContract make_environment(const OperatingPoint& op, const SpecLimits& l) {
  const double T_a = isa_air_temperature(op.alt);
  TermList g;
  auto box = [&](const char* v, double nominal, double tol) {
    g.push_back(LinearTerm::leq(var(v, -1.0), -(1.0 - tol) * nominal));
    g.push_back(LinearTerm::leq(var(v), (1.0 + tol) * nominal));
  };
  box("T_in", l.T_in_nominal, l.T_in_tol);
  box("T_a", T_a, l.T_a_tol);
  box("w_nom", l.w_nom_nominal, l.w_nom_tol);
  return PolyhedralContract({}, {"T_in", "T_a", "w_nom"}, {}, g);
}

PolyhedralContract make_spec(const OperatingPoint& op, const SpecLimits& l) {
  const PolyhedralContract env = make_environment(op, l);
  TermList g;
  g.push_back(LinearTerm::leq(var("T_e", -1.0), -l.T_e_min));
  g.push_back(LinearTerm::leq(var("T_e"), l.T_e_max));
  add_absolute_band(g, var("T_out") - var("T_in"), l.delta_t);
  return PolyhedralContract({"T_in", "T_a", "w_nom"}, {"T_e", "T_out"}, env.guarantees(), g);
}

InstanceResult evaluate_instance(const OperatingPoint& op, const ToleranceVector& eps, HxKind hx,
                                 const EvaluationModel& model) {
  InstanceResult r;
  r.op = op;
  r.eps = eps;
  r.hx = hx;
  const auto& k = model.constants;
  const PolyhedralContract env = make_environment(op, model.limits);
  const PolyhedralContract front = build_front(op, eps, k);
  const auto hx_kind = hx == HxKind::Fixed ? ComponentKind::HxFixed : ComponentKind::HxControlled;
  PolyhedralContract sud;
  PolyhedralContract closed;
  try {
    sud = compose(front, make_component(hx_kind, op, eps, k));
    closed = attach_environment(env, sud);
  } catch (const IncompatibilityError& e) {
    r.reason = e.what();
    return r;
  }
  if (!closed.is_consistent()) {
    r.reason = "the system guarantees are empty under the specification assumptions";
    return r;
  }
  r.composed = true;
  r.T_out = get_variable_bounds(closed, "T_out");
  r.T_e = get_variable_bounds(attach_environment(env, front), "T_e");

  const RefinementResult ref = refines(sud, make_spec(op, model.limits));
  r.refines_spec = ref.holds;
  if (!ref.holds) {
    if (!ref.violated_assumptions.empty()) r.reason = "assumptions not implied: " + list_terms(ref.violated_assumptions);
    if (!ref.violated_guarantees.empty()) {
      if (!r.reason.empty()) r.reason += "; ";
      r.reason += "guarantees not met: " + list_terms(ref.violated_guarantees);
    }
  }
  return r;
}

double tolerance_cost(const ToleranceVector& eps, const InstanceResult& result, const SpecLimits& l) {
  double c = 0.0;
  for (double e : eps.to_array()) c += (1.0 - e) * (1.0 - e);
  c = std::sqrt(c);
  if (!result.refines_spec || !result.T_e || !result.T_out) return c + kViolationPenalty;
  const double out_lo = l.T_in_nominal - l.delta_t;
  const double out_hi = l.T_in_nominal + l.delta_t;
  auto sq = [](double x) { return x * x; };
  return c + sq(result.T_e->lower - l.T_e_min) + sq(result.T_out->lower - out_lo) + sq(l.T_e_max - result.T_e->upper) +
         sq(out_hi - result.T_out->upper);
}

// ---- Exploration ----------------------------------------------------------

void ExploreConfig::validate() const {
  if (altitudes.empty() || thrusts.empty() || mdot_in.empty() || mdot_a.empty() || hx.empty()) {
    throw ConfigError("exploration grids must not be empty");
  }
  for (double alt : altitudes) isa_air_temperature(alt);
  model.constants.validate();
}

std::vector<InstanceResult> explore_grid(const ExploreConfig& c) {
  c.validate();
  struct Job {
    HxKind hx;
    OperatingPoint op;
  };
  std::vector<Job> jobs;
  for (auto hx : c.hx)
    for (double alt : c.altitudes)
      for (double thrust : c.thrusts)
        for (double mi : c.mdot_in)
          for (double ma : c.mdot_a) jobs.push_back({hx, {alt, thrust, mi, ma}});
  std::vector<InstanceResult> out(jobs.size());
  parallel_for(jobs.size(), c.jobs, [&](std::size_t i) {
    try {
      out[i] = evaluate_instance(jobs[i].op, c.eps, jobs[i].hx, c.model);
    } catch (const ConstructionError& e) {
      out[i].op = jobs[i].op;
      out[i].eps = c.eps;
      out[i].hx = jobs[i].hx;
      out[i].reason = e.what();
    }
  });
  return out;
}

namespace {

using Regime = std::pair<double, double>;

std::set<Regime> regimes_of(const std::vector<InstanceResult>& results, HxKind hx) {
  std::set<Regime> out;
  for (const auto& r : results) {
    if (r.hx == hx) out.insert({r.op.alt, r.op.thrust});
  }
  return out;
}

}  // namespace

std::vector<std::pair<double, double>> covering_pairs(const std::vector<InstanceResult>& results, HxKind hx) {
  const auto regimes = regimes_of(results, hx);
  std::map<std::pair<double, double>, std::set<Regime>> valid;
  std::set<std::pair<double, double>> designs;
  for (const auto& r : results) {
    if (r.hx != hx) continue;
    designs.insert({r.op.mdot_in, r.op.mdot_a});
    if (r.refines_spec) valid[{r.op.mdot_in, r.op.mdot_a}].insert({r.op.alt, r.op.thrust});
  }
  std::vector<std::pair<double, double>> out;
  for (const auto& d : designs) {
    if (!regimes.empty() && valid[d] == regimes) out.push_back(d);
  }
  return out;
}

std::optional<std::pair<double, double>> two_level_policy(const std::vector<InstanceResult>& results, HxKind hx) {
  const auto regimes = regimes_of(results, hx);
  if (regimes.empty()) return std::nullopt;
  std::map<double, std::set<Regime>> valid;
  for (const auto& r : results) {
    if (r.hx == hx) valid[r.op.mdot_in];
    if (r.hx == hx && r.refines_spec) valid[r.op.mdot_in].insert({r.op.alt, r.op.thrust});
  }
  std::optional<std::pair<double, double>> best;
  for (auto lo = valid.begin(); lo != valid.end(); ++lo) {
    for (auto hi = lo; hi != valid.end(); ++hi) {
      std::set<Regime> covered = lo->second;
      covered.insert(hi->second.begin(), hi->second.end());
      if (covered != regimes) continue;
      if (!best || hi->first - lo->first > best->second - best->first) best = {lo->first, hi->first};
    }
  }
  return best;
}

void write_explore_outputs(const std::vector<InstanceResult>& results, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ostringstream csv;
  csv << "hx,alt_km,thrust_kg,mdot_in,mdot_a,mdot_e,T_a_nominal,composed,refines_spec,T_e_min,T_e_max,T_out_min,"
         "T_out_max,reason\n";
  for (const auto& r : results) {
    csv << to_string(r.hx) << ',' << csv_number(r.op.alt) << ',' << csv_number(r.op.thrust) << ','
        << csv_number(r.op.mdot_in) << ',' << csv_number(r.op.mdot_a) << ',' << csv_number(r.op.mdot_e()) << ','
        << csv_number(isa_air_temperature(r.op.alt)) << ',' << (r.composed ? 1 : 0) << ','
        << (r.refines_spec ? 1 : 0) << ',';
    if (r.T_e && r.T_out) {
      csv << csv_number(r.T_e->lower) << ',' << csv_number(r.T_e->upper) << ',' << csv_number(r.T_out->lower) << ','
          << csv_number(r.T_out->upper);
    } else {
      csv << ",,,";
    }
    std::string reason = r.reason;
    std::replace(reason.begin(), reason.end(), '"', '\'');
    std::replace(reason.begin(), reason.end(), '\n', ' ');
    csv << ",\"" << reason << "\"\n";
  }
  write_file(dir / "explore.csv", csv.str());

  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};
  for (auto hx : {HxKind::Fixed, HxKind::Controlled}) {
    svg::Band te{"T_e bounds", "#d62728", {}, {}, {}};
    svg::Band tout{"T_out bounds", "#1f77b4", {}, {}, {}};
    std::map<double, svg::Series> valid;
    std::size_t index = 0;
    bool any = false;
    for (const auto& r : results) {
      if (r.hx != hx) continue;
      any = true;
      ++index;
      if (r.T_e && r.T_out) {
        te.x.push_back(static_cast<double>(index));
        te.lo.push_back(r.T_e->lower);
        te.hi.push_back(r.T_e->upper);
        tout.x.push_back(static_cast<double>(index));
        tout.lo.push_back(r.T_out->lower);
        tout.hi.push_back(r.T_out->upper);
      }
      auto& s = valid[r.op.alt];
      if (s.label.empty()) {
        s.label = "alt " + format_number(r.op.alt) + " km";
        s.color = palette[(valid.size() - 1) % 6];
        s.style = svg::Series::Style::Markers;
      }
      if (r.refines_spec) s.points.emplace_back(r.op.mdot_in, r.op.mdot_a);
    }
    if (!any) continue;
    const std::string name(to_string(hx));
    write_file(dir / ("bounds_" + name + ".svg"),
               svg::render({"Temperature bounds, " + name + " heat exchanger", "instance", "temperature (K)",
                            {te, tout}, {}}));
    svg::Chart scatter{"Valid design points, " + name + " heat exchanger", "mdot_in (kg/s)", "mdot_a (kg/s)", {}, {}};
    for (auto& [alt, s] : valid) scatter.series.push_back(s);
    write_file(dir / ("valid_" + name + ".svg"), svg::render(scatter));
  }
}

// ---- Optimization ---------------------------------------------------------

OptimizeResult optimize_tolerances(const OptimizeConfig& c) {
  if (!(c.eps_min <= c.eps_max)) throw ConfigError("eps_min exceeds eps_max");
  c.model.constants.validate();
  OptimizeResult out;
  std::vector<Interval> box(kToleranceCount, {c.eps_min, c.eps_max});
  auto to_vec = [](const ToleranceVector& t) {
    const auto a = t.to_array();
    return std::vector<double>(a.begin(), a.end());
  };
  auto from_vec = [](const std::vector<double>& v) {
    std::array<double, kToleranceCount> a{};
    std::copy(v.begin(), v.end(), a.begin());
    return ToleranceVector::from_array(a);
  };
  auto cost = [&](const std::vector<double>& x) {
    for (double e : x) {
      if (e < c.eps_min || e > c.eps_max) out.stayed_in_box = false;
    }
    const ToleranceVector eps = from_vec(x);
    return tolerance_cost(eps, evaluate_instance(c.op, eps, c.hx, c.model), c.model.limits);
  };

  std::vector<double> x0 = to_vec(c.start);
  for (double& e : x0) e = std::clamp(e, c.eps_min, c.eps_max);
  out.start_cost = cost(x0);
  out.trajectory.push_back({0, from_vec(x0), out.start_cost});

  NelderMeadOptions options;
  options.max_iterations = c.iterations;
  const auto nm = nelder_mead_minimize(cost, x0, box, options, [&](std::size_t it, const std::vector<double>& x, double f) {
    out.trajectory.push_back({it, from_vec(x), f});
  });
  out.best = from_vec(nm.x);
  out.best_cost = nm.f;
  out.iterations = nm.iterations;
  out.evaluations = nm.evaluations + 1;
  out.best_instance = evaluate_instance(c.op, out.best, c.hx, c.model);
  return out;
}

// ---- JSON -----------------------------------------------------------------

json tolerances_to_json(const ToleranceVector& eps) {
  json j = json::object();
  const auto v = eps.to_array();
  for (std::size_t i = 0; i < kToleranceCount; ++i) j[ToleranceVector::names()[i]] = v[i];
  return j;
}

ToleranceVector tolerances_from_json(const json& j) {
  try {
    auto v = ToleranceVector{}.to_array();
    if (j.is_number()) {
      v = ToleranceVector::uniform(j.get<double>()).to_array();
    } else if (j.is_object()) {
      const auto& names = ToleranceVector::names();
      for (const auto& [name, value] : j.items()) {
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw ConfigError("unknown tolerance '" + name + "'");
        v[static_cast<std::size_t>(it - names.begin())] = value.get<double>();
      }
    } else {
      throw ConfigError("tolerances must be a number or an object");
    }
    for (double e : v) {
      if (!(e >= 0.0)) throw ConfigError("tolerances must be non-negative");
    }
    return ToleranceVector::from_array(v);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid tolerances: ") + e.what());
  }
}

OperatingPoint operating_point_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("operating point must be an object");
  try {
    OperatingPoint op{j.at("alt").get<double>(), j.at("thrust").get<double>(), j.at("mdot_in").get<double>(),
                      get_or(j, "mdot_a", 0.0)};
    if (op.mdot_a < 0.0) throw ConfigError("mdot_a must be non-negative");
    if (op.thrust <= 0.0) throw ConfigError("thrust must be positive");
    return op;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid operating point: ") + e.what());
  }
}

EvaluationModel model_from_json(const json& j) {
  EvaluationModel m;
  try {
    if (j.contains("constants")) {
      const auto& c = j.at("constants");
      auto& k = m.constants;
      k.C_f = get_or(c, "C_f", k.C_f);
      k.C_a = get_or(c, "C_a", k.C_a);
      k.rho_f = get_or(c, "rho_f", k.rho_f);
      k.dP_ep = get_or(c, "dP_ep", k.dP_ep);
      k.eta_ep = get_or(c, "eta_ep", k.eta_ep);
      k.eta_x = get_or(c, "eta_x", k.eta_x);
      k.k_e = get_or(c, "k_e", k.k_e);
      k.eta_g = get_or(c, "eta_g", k.eta_g);
      k.eta_l = get_or(c, "eta_l", k.eta_l);
      k.T_ref = get_or(c, "T_ref", k.T_ref);
    }
    if (j.contains("limits")) {
      const auto& c = j.at("limits");
      auto& l = m.limits;
      l.T_in_nominal = get_or(c, "T_in_nominal", l.T_in_nominal);
      l.w_nom_nominal = get_or(c, "w_nom_nominal", l.w_nom_nominal);
      l.T_in_tol = get_or(c, "T_in_tol", l.T_in_tol);
      l.T_a_tol = get_or(c, "T_a_tol", l.T_a_tol);
      l.w_nom_tol = get_or(c, "w_nom_tol", l.w_nom_tol);
      l.T_e_min = get_or(c, "T_e_min", l.T_e_min);
      l.T_e_max = get_or(c, "T_e_max", l.T_e_max);
      l.delta_t = get_or(c, "delta_t", l.delta_t);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid model settings: ") + e.what());
  }
  m.constants.validate();
  return m;
}

ExploreConfig explore_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("exploration configuration must be a JSON object");
  ExploreConfig c;
  try {
    c.altitudes = require_list(j, "altitudes", c.altitudes);
    c.thrusts = require_list(j, "thrusts", c.thrusts);
    c.mdot_in = require_list(j, "mdot_in", c.mdot_in);
    c.mdot_a = require_list(j, "mdot_a", c.mdot_a);
    if (j.contains("hx")) {
      c.hx.clear();
      for (const auto& name : j.at("hx").get<std::vector<std::string>>()) c.hx.push_back(parse_hx_kind(name));
    }
    if (j.contains("tolerances")) c.eps = tolerances_from_json(j.at("tolerances"));
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<unsigned>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid exploration configuration: ") + e.what());
  }
  c.model = model_from_json(j);
  c.validate();
  return c;
}

OptimizeConfig optimize_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("optimization configuration must be a JSON object");
  OptimizeConfig c;
  try {
    if (j.contains("operating_point")) c.op = operating_point_from_json(j.at("operating_point"));
    if (j.contains("hx")) c.hx = parse_hx_kind(j.at("hx").get<std::string>());
    if (j.contains("start")) c.start = tolerances_from_json(j.at("start"));
    c.eps_min = get_or(j, "eps_min", c.eps_min);
    c.eps_max = get_or(j, "eps_max", c.eps_max);
    if (j.contains("iterations")) c.iterations = j.at("iterations").get<std::size_t>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid optimization configuration: ") + e.what());
  }
  c.model = model_from_json(j);
  return c;
}

json instance_to_json(const InstanceResult& r) {
  json j = {{"hx", std::string(to_string(r.hx))},
            {"operating_point",
             {{"alt", r.op.alt}, {"thrust", r.op.thrust}, {"mdot_in", r.op.mdot_in}, {"mdot_a", r.op.mdot_a},
              {"mdot_e", r.op.mdot_e()}}},
            {"tolerances", tolerances_to_json(r.eps)},
            {"composed", r.composed},
            {"refines_spec", r.refines_spec},
            {"reason", r.reason},
            {"T_e", r.T_e ? range_to_json(*r.T_e) : json(nullptr)},
            {"T_out", r.T_out ? range_to_json(*r.T_out) : json(nullptr)}};
  return j;
}

json optimize_result_to_json(const OptimizeResult& r) {
  json traj = json::array();
  for (const auto& s : r.trajectory) {
    traj.push_back({{"iteration", s.iteration}, {"tolerances", tolerances_to_json(s.eps)}, {"cost", s.cost}});
  }
  return {{"best", tolerances_to_json(r.best)},
          {"start_cost", r.start_cost},
          {"best_cost", r.best_cost},
          {"iterations", r.iterations},
          {"evaluations", r.evaluations},
          {"stayed_in_box", r.stayed_in_box},
          {"best_instance", instance_to_json(r.best_instance)},
          {"trajectory", traj}};
}

}  // namespace cforge::aircraft
