#include "cforge/mission.hpp"

#include <stdexcept>

#include "cforge/errors.hpp"

namespace cforge::mission {
namespace {

struct Builder {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  TermList a;
  TermList g;
};

void add_leq(TermList& list, Coefficients c, double bound) { list.push_back(LinearTerm(std::move(c), bound)); }

// lo * dT <= x - y <= hi * dT, or lo <= x - y <= hi when dT is empty.
void add_band(TermList& list, const std::string& x, const std::string& y, Range r, const std::string& dT) {
  if (dT.empty()) {
    add_leq(list, {{x, 1.0}, {y, -1.0}}, r.max);
    add_leq(list, {{x, -1.0}, {y, 1.0}}, -r.min);
  } else {
    add_leq(list, {{x, 1.0}, {y, -1.0}, {dT, -r.max}}, 0.0);
    add_leq(list, {{x, -1.0}, {y, 1.0}, {dT, r.min}}, 0.0);
  }
}

void add_same(TermList& list, const std::string& x, const std::string& y) {
  list.push_back(LinearTerm({{x, 1.0}, {y, -1.0}}, 0.0, Relation::Eq));
}

void add_range(TermList& list, const std::string& v, double lo, double hi) {
  add_leq(list, {{v, -1.0}}, -lo);
  add_leq(list, {{v, 1.0}}, hi);
}

Range power_range(TaskKind kind, const TaskHyperparameters& h) {
  switch (kind) {
    case TaskKind::DSN: return h.dsn_cons;
    case TaskKind::SBO: return h.sbo_cons;
    case TaskKind::TCM_H: return h.tcm_h_cons;
    case TaskKind::TCM_DV: return h.tcm_dv_cons;
    case TaskKind::CHRG: return h.chrg_gen;
  }
  return {};
}

void power(Builder& b, TaskKind kind, const TaskHyperparameters& h, std::size_t k, const std::string& dT) {
  const auto in = state_var("soc", k - 1);
  const auto out = state_var("soc", k);
  b.inputs = {in, dT};
  b.outputs = {out};
  add_leq(b.a, {{dT, -1.0}}, 0.0);
  add_leq(b.a, {{in, -1.0}}, 0.0);
  if (kind == TaskKind::CHRG) {
    add_band(b.g, out, in, power_range(kind, h), dT);
  } else {
    add_band(b.g, in, out, power_range(kind, h), dT);
  }
  add_range(b.g, out, 0.0, 100.0);
}

void science(Builder& b, TaskKind kind, const TaskHyperparameters& h, std::size_t k, const std::string& dT) {
  const auto d0 = state_var("d", k - 1), d1 = state_var("d", k);
  const auto c0 = state_var("c", k - 1), c1 = state_var("c", k);
  b.inputs = {d0, c0, dT};
  b.outputs = {d1, c1};
  switch (kind) {
    case TaskKind::DSN:
      add_leq(b.a, {{dT, -1.0}}, 0.0);
      add_range(b.a, d0, 0.0, 100.0);
      add_band(b.g, d0, d1, h.dsn_rate, dT);
      add_same(b.g, c1, c0);
      break;
    case TaskKind::SBO:
      add_leq(b.a, {{dT, -1.0}}, 0.0);
      add_leq(b.a, {{c0, -1.0}}, 0.0);
      add_leq(b.a, {{d0, -1.0}}, 0.0);
      add_leq(b.a, {{d0, 1.0}, {dT, h.sbo_sgen.max}}, 100.0);
      add_leq(b.g, {{d1, 1.0}}, 100.0);
      add_band(b.g, d1, d0, h.sbo_sgen, dT);
      add_band(b.g, c1, c0, h.sbo_sgen, dT);
      break;
    default:
      add_same(b.g, d1, d0);
      add_same(b.g, c1, c0);
      break;
  }
}

void nav(Builder& b, TaskKind kind, const TaskHyperparameters& h, std::size_t k, const std::string& dT) {
  const auto u0 = state_var("u", k - 1), u1 = state_var("u", k);
  const auto r0 = state_var("r", k - 1), r1 = state_var("r", k);
  b.inputs = {u0, r0, dT};
  b.outputs = {u1, r1};
  switch (kind) {
    case TaskKind::DSN:
    case TaskKind::CHRG:
      add_range(b.a, u0, 0.0, 100.0);
      add_range(b.a, r0, 0.0, 100.0);
      add_same(b.g, r1, r0);
      add_leq(b.g, {{u1, 1.0}}, 100.0);
      add_band(b.g, u1, u0, kind == TaskKind::DSN ? h.dsn_noise : h.chrg_noise, "");
      break;
    case TaskKind::SBO:
      add_leq(b.a, {{dT, -1.0}}, 0.0);
      add_leq(b.a, {{u0, 1.0}}, 100.0);
      add_same(b.g, r1, r0);
      add_range(b.g, u1, 0.0, 100.0);
      add_band(b.g, u0, u1, h.sbo_imp, dT);
      break;
    case TaskKind::TCM_H:
      add_same(b.g, u1, u0);
      add_same(b.g, r1, r0);
      break;
    case TaskKind::TCM_DV:
      add_leq(b.a, {{dT, -1.0}}, 0.0);
      add_range(b.a, u0, 0.0, 100.0);
      add_leq(b.a, {{r0, 1.0}}, 100.0);
      add_leq(b.g, {{r1, -1.0}}, 0.0);
      add_range(b.g, u1, 0.0, 100.0);
      add_band(b.g, r1, r0, h.tcm_dv_imp, dT);
      add_band(b.g, u1, u0, h.tcm_dv_noise, dT);
      break;
  }
}

void check_range(const Range& r, const char* name, bool non_negative) {
  if (!(r.min <= r.max)) throw ConfigError(std::string(name) + ": min exceeds max");
  if (non_negative && r.min < 0.0) throw ConfigError(std::string(name) + " must be non-negative");
}

}  // namespace

std::string_view to_string(TaskKind kind) noexcept {
  switch (kind) {
    case TaskKind::DSN: return "DSN";
    case TaskKind::SBO: return "SBO";
    case TaskKind::TCM_H: return "TCM_H";
    case TaskKind::TCM_DV: return "TCM_DV";
    case TaskKind::CHRG: return "CHRG";
  }
  return "?";
}

std::string_view to_string(Viewpoint viewpoint) noexcept {
  switch (viewpoint) {
    case Viewpoint::Power: return "power";
    case Viewpoint::Science: return "science";
    case Viewpoint::Nav: return "navigation";
  }
  return "?";
}

std::vector<TaskKind> parse_sequence(const std::vector<std::string>& names) {
  std::vector<TaskKind> out;
  for (const auto& n : names) {
    if (n == "DSN") out.push_back(TaskKind::DSN);
    else if (n == "SBO") out.push_back(TaskKind::SBO);
    else if (n == "CHRG") out.push_back(TaskKind::CHRG);
    else if (n == "TCM_H") out.push_back(TaskKind::TCM_H);
    else if (n == "TCM_DV") out.push_back(TaskKind::TCM_DV);
    else if (n == "TCM") {
      out.push_back(TaskKind::TCM_H);
      out.push_back(TaskKind::TCM_DV);
    } else {
      throw ConfigError("unknown task '" + n + "'");
    }
  }
  return out;
}

std::vector<TaskKind> canonical_sequence() {
  return {TaskKind::DSN, TaskKind::CHRG, TaskKind::SBO, TaskKind::TCM_H, TaskKind::TCM_DV};
}

std::vector<TaskKind> long_sequence() {
  std::vector<TaskKind> out;
  for (int i = 0; i < 4; ++i) {
    for (auto k : canonical_sequence()) out.push_back(k);
  }
  return out;
}

void TaskHyperparameters::validate() const {
  check_range(chrg_gen, "chrg_gen", true);
  check_range(dsn_cons, "dsn_cons", true);
  check_range(sbo_cons, "sbo_cons", true);
  check_range(tcm_h_cons, "tcm_h_cons", true);
  check_range(tcm_dv_cons, "tcm_dv_cons", true);
  check_range(dsn_rate, "dsn_rate", true);
  check_range(sbo_sgen, "sbo_sgen", true);
  check_range(dsn_noise, "dsn_noise", false);
  check_range(chrg_noise, "chrg_noise", false);
  check_range(sbo_imp, "sbo_imp", false);
  check_range(tcm_dv_imp, "tcm_dv_imp", false);
  check_range(tcm_dv_noise, "tcm_dv_noise", false);
}

std::string state_var(std::string_view base, std::size_t k) { return std::string(base) + "_" + std::to_string(k); }

std::string duration_var(std::size_t k) { return "dT_" + std::to_string(k); }

PolyhedralContract task_viewpoint_contract(TaskKind kind, Viewpoint viewpoint, const TaskHyperparameters& hyper,
                                           std::size_t step) {
  if (step == 0) throw std::invalid_argument("task steps are numbered from 1");
  Builder b;
  const auto dT = duration_var(step);
  switch (viewpoint) {
    case Viewpoint::Power: power(b, kind, hyper, step, dT); break;
    case Viewpoint::Science: science(b, kind, hyper, step, dT); break;
    case Viewpoint::Nav: nav(b, kind, hyper, step, dT); break;
  }
  return PolyhedralContract(std::move(b.inputs), std::move(b.outputs), std::move(b.a), std::move(b.g));
}

ScenarioIncompatibility::ScenarioIncompatibility(IncompatibilityDiagnostic diagnostic, std::size_t step,
                                                 Viewpoint viewpoint)
    : IncompatibilityError(std::move(diagnostic)), step_(step), viewpoint_(viewpoint) {
  message_ = "step " + std::to_string(step) + " (" + std::string(to_string(viewpoint)) +
             " viewpoint): " + IncompatibilityError::what();
}

PolyhedralContract viewpoint_chain(const std::vector<TaskKind>& sequence, Viewpoint viewpoint,
                                   const TaskHyperparameters& hyper) {
  if (sequence.empty()) throw std::invalid_argument("empty task sequence");
  PolyhedralContract chain = task_viewpoint_contract(sequence.front(), viewpoint, hyper, 1);
  for (std::size_t k = 2; k <= sequence.size(); ++k) {
    const auto next = task_viewpoint_contract(sequence[k - 1], viewpoint, hyper, k);
    try {
      chain = compose(chain, next, chain.output_set());
    } catch (const IncompatibilityError& e) {
      throw ScenarioIncompatibility(e.diagnostic(), k, viewpoint);
    }
  }
  return chain;
}

PolyhedralContract build_scenario(const std::vector<TaskKind>& sequence, const TaskHyperparameters& hyper) {
  hyper.validate();
  PolyhedralContract out = viewpoint_chain(sequence, Viewpoint::Power, hyper);
  out = merge(out, viewpoint_chain(sequence, Viewpoint::Science, hyper));
  return merge(out, viewpoint_chain(sequence, Viewpoint::Nav, hyper));
}

PolyhedralContract requirements_contract(const OperationalRequirements& req, std::size_t steps) {
  std::vector<std::string> inputs = {state_var("soc", 0), state_var("d", 0), state_var("u", 0)};
  std::vector<std::string> outputs;
  TermList a;
  TermList g;
  add_range(a, state_var("soc", 0), req.min_soc, 100.0);
  a.push_back(LinearTerm({{state_var("d", 0), 1.0}}, req.initial_data_volume, Relation::Eq));
  a.push_back(LinearTerm({{state_var("u", 0), 1.0}}, req.initial_uncertainty, Relation::Eq));
  for (std::size_t k = 1; k <= steps; ++k) {
    inputs.push_back(duration_var(k));
    add_leq(a, {{duration_var(k), -1.0}}, -req.min_step_duration);
    outputs.push_back(state_var("soc", k));
    add_leq(g, {{state_var("soc", k), -1.0}}, -req.min_soc);
  }
  return PolyhedralContract(std::move(inputs), std::move(outputs), std::move(a), std::move(g));
}

ScheduleResult check_schedulable(const PolyhedralContract& scenario, const OperationalRequirements& req,
                                 std::size_t steps) {
  ScheduleResult result;
  try {
    result.merged = merge(scenario, requirements_contract(req, steps));
  } catch (const InterfaceError&) {
    return result;
  }
  if (!result.merged.is_compatible() || !result.merged.is_consistent()) return result;
  result.admissible = true;
  result.initial_soc = get_variable_bounds(result.merged, state_var("soc", 0));
  LinearExpr avg;
  for (std::size_t k = 1; k <= steps; ++k) {
    result.soc_bounds.push_back(get_variable_bounds(result.merged, state_var("soc", k)));
    avg += LinearExpr::variable(state_var("soc", k), 1.0 / static_cast<double>(steps));
  }
  result.avg_soc_min = optimize(result.merged, avg, Direction::Min).value.value_or(0.0);
  result.avg_soc_max = optimize(result.merged, avg, Direction::Max).value.value_or(0.0);
  return result;
}

Scores score(const TaskHyperparameters& h, const OperationalRequirements& req) {
  const double terms[] = {
      h.chrg_gen.mid(),     -h.dsn_cons.mid(),    -h.sbo_cons.mid(),     -h.tcm_h_cons.mid(),
      -h.tcm_dv_cons.mid(), h.dsn_rate.mid(),     -h.sbo_sgen.mid(),     -h.dsn_noise.mid(),
      -h.chrg_noise.mid(),  h.sbo_imp.mid(),      h.tcm_dv_imp.mid(),    -h.tcm_dv_noise.mid(),
  };
  double sum = 0.0;
  for (double t : terms) sum += t;
  Scores s;
  s.scenario = sum / static_cast<double>(std::size(terms));
  s.requirement =
      (req.min_soc + req.min_step_duration + req.initial_data_volume + req.initial_uncertainty) / 4.0;
  return s;
}

ScheduleResult evaluate_schedule(const std::vector<TaskKind>& sequence, const TaskHyperparameters& hyper,
                                 const OperationalRequirements& req) {
  const auto scenario = build_scenario(sequence, hyper);
  ScheduleResult result = check_schedulable(scenario, req, sequence.size());
  const Scores s = score(hyper, req);
  result.scenario_score = s.scenario;
  result.requirement_score = s.requirement;
  return result;
}

}  // namespace cforge::mission
