// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cforge/aircraft.hpp"
#include "cforge/contract.hpp"
#include "cforge/mission.hpp"
#include "cforge/mission_sweep.hpp"
#include "cforge/parser.hpp"
#include "cforge/polyhedral.hpp"
#include "cforge/tolerance.hpp"

namespace {

using namespace cforge;
using PC = PolyhedralContract;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string num(double v) { return format_number(v); }

TermList terms(const std::vector<std::string>& lines) { return parse_constraints(lines); }

// Every term of `a` is the same half-space (or hyperplane) as some term of `b`, and vice versa.
bool term_equivalent(const TermList& a, const TermList& b) {
  auto covered = [](const TermList& x, const TermList& y) {
    return std::all_of(x.begin(), x.end(), [&](const LinearTerm& t) {
      return std::any_of(y.begin(), y.end(), [&](const LinearTerm& u) { return equivalent(TermList{t}, TermList{u}); });
    });
  };
  return covered(a, b) && covered(b, a);
}

PC c1() { return PC::from_strings({"i"}, {"o"}, {"|i| <= 2"}, {"o - i <= 0", "i - 2o <= 2"}); }
PC c2() { return PC::from_strings({"o"}, {"o_p"}, {"o <= 0.2", "-o <= 1"}, {"o_p - o <= 0"}); }
PC c1n() { return PC::from_strings({"i"}, {"o"}, {"|i| <= 2"}, {"|o| <= 3"}); }

// ---- 1-4: algebra golden examples -----------------------------------------

Outcome composition_golden() {
  const auto start = Clock::now();
  const PC sys = compose(c1(), c2());
  const double ms = ms_since(start);
  double bound = 0.0;
  for (const auto& t : sys.assumptions()) {
    if (t.coefficients().size() == 1 && t.coefficient("i") > 0) bound = t.bound() / t.coefficient("i");
  }
  const bool a_ok = equivalent(sys.assumptions(), terms({"i <= 0.2", "-0.5 i <= 0"}));
  const bool g_ok = equivalent(sys.guarantees(), terms({"-i + o_p <= 0"}));
  const bool bound_ok = std::abs(bound - 0.2) <= 1e-6;
  return {a_ok && g_ok && bound_ok && ms < 50.0,
          "A equivalent " + std::string(a_ok ? "yes" : "no") + ", G equivalent " + (g_ok ? "yes" : "no") +
              ", i bound " + format_number(bound, NumberStyle::Exact) + ", " + num(ms) + " ms"};
}

Outcome diagnostic_golden() {
  try {
    compose(c1n(), c2());
  } catch (const IncompatibilityError& e) {
    const auto& d = e.diagnostic();
    const bool vars = d.variables == VarSet{"o"};
    const bool failed = equivalent(d.failed_terms, terms({"o <= 0.2", "-o <= 1"}));
    const bool context = equivalent(d.context_terms, terms({"|o| <= 3"}));
    const bool message = std::string(e.what()).rfind("Could not eliminate variables ['o']", 0) == 0;
    return {vars && failed && context && message, std::string("variables {o} ") + (vars ? "yes" : "no") +
                                                      ", failed terms " + (failed ? "match" : "differ") +
                                                      ", context " + (context ? "match" : "differ")};
  }
  return {false, "composition succeeded"};
}

Outcome quotient_golden() {
  const PC top = PC::from_strings({"i"}, {"o_p"}, {"|i| <= 1"}, {"o_p - 2i = 1"});
  const PC partial = PC::from_strings({"i"}, {"o"}, {"|i| <= 2"}, {"o - 2i = 0"});
  const PC q = quotient(top, partial);
  const bool a_ok = equivalent(q.assumptions(), terms({"|o| <= 2"}));
  const bool g_ok = equivalent(q.guarantees(), terms({"o_p - o = 1"}));
  const bool sound = refines(compose(partial, q), top).holds;
  return {a_ok && g_ok && sound, std::string("A ") + (a_ok ? "match" : "differ") + ", G " +
                                     (g_ok ? "match" : "differ") + ", partial || quotient refines top " +
                                     (sound ? "yes" : "no")};
}

Outcome merge_golden() {
  const PC functional = PC::from_strings({"i"}, {"o"}, {"|i| <= 2"}, {"o - 2i = 1"});
  const PC power = PC::from_strings({"temp"}, {"P"}, {"temp <= 90"}, {"P <= 2.1"});
  const PC m = merge(functional, power);
  const bool a_ok = term_equivalent(m.assumptions(), terms({"|i| <= 2", "temp <= 90"}));
  const bool g_ok = term_equivalent(m.guarantees(), terms({"-2i + o = 1", "P <= 2.1"}));
  return {a_ok && g_ok, std::string("A terms ") + (a_ok ? "match" : "differ") + ", G terms " +
                            (g_ok ? "match" : "differ")};
}

// ---- 5-6: mission lab -----------------------------------------------------

mission::TaskHyperparameters hyper(double scale) {
  mission::TaskHyperparameters h;
  h.chrg_gen = {0.3 * scale, 0.5 * scale};
  h.dsn_cons = {0.1 * scale, 0.2 * scale};
  h.sbo_cons = {0.2 * scale, 0.3 * scale};
  h.tcm_h_cons = {0.1 * scale, 0.15 * scale};
  h.tcm_dv_cons = {0.3 * scale, 0.4 * scale};
  h.dsn_rate = {0.2, 0.4};
  h.sbo_sgen = {0.1, 0.2};
  h.dsn_noise = {1.0, 2.0};
  h.chrg_noise = {0.5, 1.0};
  h.sbo_imp = {0.0, 0.3};
  h.tcm_dv_imp = {0.2, 0.3};
  h.tcm_dv_noise = {0.01, 0.02};
  return h;
}

Outcome power_chain_structure() {
  const auto sequence = mission::canonical_sequence();
  if (sequence.size() != 5 || sequence.front() != mission::TaskKind::DSN) return {false, "unexpected canonical sequence"};
  std::string charging_exit;
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    if (sequence[k] == mission::TaskKind::CHRG) charging_exit = mission::state_var("soc", k + 1);
  }
  std::string detail;
  bool pass = true;
  for (double scale : {0.5, 1.0, 2.5}) {
    const auto h = hyper(scale);
    const PC chain = mission::viewpoint_chain(sequence, mission::Viewpoint::Power, h);
    TermList expected;
    for (std::size_t k = 1; k <= sequence.size(); ++k) {
      expected.push_back(LinearTerm({{mission::duration_var(k), -1.0}}, 0.0));
    }
    expected.push_back(LinearTerm({{"soc_0", -1.0}, {mission::duration_var(1), h.dsn_cons.max}}, 0.0));
    const bool a_ok = equivalent(chain.assumptions(), expected);
    std::set<std::string> capped;
    for (const auto& t : chain.guarantees()) {
      if (t.coefficients().size() == 1 && t.coefficients().begin()->second > 0 && !t.is_equality()) {
        capped.insert(t.coefficients().begin()->first);
      }
    }
    const bool cap_ok = capped == std::set<std::string>{charging_exit};
    pass = pass && a_ok && cap_ok;
    detail += "scale " + num(scale) + ": A " + (a_ok ? "match" : "differ") + ", soc cap on {";
    for (const auto& v : capped) detail += v == *capped.begin() ? v : ", " + v;
    detail += "}; ";
  }
  detail += "charging exit " + charging_exit;
  return {pass, detail};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome mission_sweep() {
  mission::SweepConfig config;
  const auto start = Clock::now();
  const auto first = mission::run_sweep(config);
  const double seconds = ms_since(start) / 1000.0;
  mission::SweepConfig threaded = config;
  threaded.jobs = 2;
  const auto second = mission::run_sweep(threaded);

  const auto dir = std::filesystem::temp_directory_path() / "cforge_acceptance_sweep";
  std::filesystem::remove_all(dir);
  mission::write_sweep_outputs(first, config, dir / "a");
  mission::write_sweep_outputs(second, threaded, dir / "b");
  bool same = true;
  for (const char* f : {"results.csv", "bounds.json", "scores.svg"}) same = same && slurp(dir / "a" / f) == slurp(dir / "b" / f);
  std::filesystem::remove_all(dir);

  const double rate = first.admissibility_rate();
  const bool sized = first.rows.size() == 400;
  return {sized && seconds < 60.0 && rate > 0.0 && rate < 0.5 && same,
          std::to_string(first.admissible) + "/" + std::to_string(first.rows.size()) + " admissible (" +
              num(100.0 * rate) + "%), " + num(seconds) + " s, deterministic " + (same ? "yes" : "no")};
}

// ---- 7-10: aircraft lab and latency ---------------------------------------

const std::vector<aircraft::InstanceResult>& default_grid() {
  static const auto results = aircraft::explore_grid(aircraft::ExploreConfig{});
  return results;
}

Outcome exhaust_properties() {
  const auto& results = default_grid();
  using Key = std::tuple<int, double, double, double>;
  std::map<Key, std::vector<const aircraft::InstanceResult*>> by_design;  // varying mdot_a
  std::map<Key, std::vector<const aircraft::InstanceResult*>> by_air;     // varying mdot_in
  std::size_t missing = 0;
  for (const auto& r : results) {
    if (!r.T_e || !r.T_out) {
      ++missing;
      continue;
    }
    const int hx = static_cast<int>(r.hx);
    by_design[{hx, r.op.alt, r.op.thrust, r.op.mdot_in}].push_back(&r);
    by_air[{hx, r.op.alt, r.op.thrust, r.op.mdot_a}].push_back(&r);
  }
  std::size_t te_breaks = 0, te_rises = 0, tout_rises = 0;
  for (const auto& [key, rs] : by_design) {
    for (const auto* r : rs) {
      if (r->T_e->lower != rs.front()->T_e->lower || r->T_e->upper != rs.front()->T_e->upper) ++te_breaks;
    }
    if (std::get<0>(key) != static_cast<int>(aircraft::HxKind::Fixed)) continue;
    for (std::size_t i = 1; i < rs.size(); ++i) {
      if (rs[i]->T_out->upper > rs[i - 1]->T_out->upper + 1e-9) ++tout_rises;  // ordered by mdot_a
    }
  }
  for (const auto& [key, rs] : by_air) {
    for (std::size_t i = 1; i < rs.size(); ++i) {
      if (rs[i]->T_e->upper > rs[i - 1]->T_e->upper + 1e-9) ++te_rises;  // ordered by mdot_in
    }
  }
  const bool pass = missing == 0 && te_breaks == 0 && te_rises == 0 && tout_rises == 0;
  return {pass, std::to_string(results.size()) + " instances, " + std::to_string(missing) + " unevaluated, T_e differs across mdot_a " +
                    std::to_string(te_breaks) + "x, T_e rises with mdot_in " + std::to_string(te_rises) +
                    "x, T_out rises with mdot_a " + std::to_string(tout_rises) + "x"};
}

Outcome design_space_pattern() {
  const auto& results = default_grid();
  const auto fixed_pairs = aircraft::covering_pairs(results, aircraft::HxKind::Fixed);
  const auto policy = aircraft::two_level_policy(results, aircraft::HxKind::Controlled);
  std::size_t valid_fixed = 0, valid_controlled = 0;
  double min_te_upper = std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    if (r.refines_spec) ++(r.hx == aircraft::HxKind::Fixed ? valid_fixed : valid_controlled);
    if (r.T_e) min_te_upper = std::min(min_te_upper, r.T_e->upper);
  }
  std::string detail = "fixed: " + std::to_string(fixed_pairs.size()) + " covering pairs (" +
                       std::to_string(valid_fixed) + " valid instances); controlled: policy " +
                       (policy ? num(policy->first) + "/" + num(policy->second) : std::string("none")) + " (" +
                       std::to_string(valid_controlled) + " valid instances); lowest T_e upper bound " +
                       num(min_te_upper) + " K";
  return {fixed_pairs.empty() && policy.has_value(), detail};
}

Outcome tolerance_optimizer() {
  aircraft::OptimizeConfig config;
  const auto r = aircraft::optimize_tolerances(config);
  bool in_box = r.stayed_in_box;
  for (double e : r.best.to_array()) in_box = in_box && e >= config.eps_min && e <= config.eps_max;
  const bool feasible = r.best_instance.refines_spec;
  const bool improved = r.best_cost < r.start_cost;
  std::string detail = std::to_string(r.iterations) + " iterations, in box " + (in_box ? "yes" : "no") +
                       ", meets specification " + (feasible ? "yes" : "no");
  if (!feasible) detail += " (" + r.best_instance.reason + ")";
  detail += ", cost " + format_number(r.start_cost, NumberStyle::Exact) + " -> " +
            format_number(r.best_cost, NumberStyle::Exact);
  return {in_box && feasible && improved, detail};
}

Outcome interactivity() {
  double worst_instance = 0.0;
  for (auto hx : {aircraft::HxKind::Fixed, aircraft::HxKind::Controlled}) {
    const auto start = Clock::now();
    aircraft::evaluate_instance({15.0, 20000.0, 9.316, 0.429}, aircraft::ToleranceVector::uniform(0.01), hx);
    worst_instance = std::max(worst_instance, ms_since(start));
  }
  const auto start = Clock::now();
  const auto s = mission::evaluate_schedule(mission::canonical_sequence(), hyper(1.0), {});
  const double schedule_ms = ms_since(start);
  (void)s;
  return {worst_instance < 3000.0 && schedule_ms < 3000.0,
          "evaluate_instance " + num(worst_instance) + " ms, 5-step schedulability " + num(schedule_ms) + " ms"};
}

// ---- 11: property suites --------------------------------------------------

// Grid oracle for projecting out one variable of up to three.
bool projection_suite(std::string& detail) {
  std::mt19937_64 rng(90210);
  std::uniform_int_distribution<int> coef(-4, 4), bound(-5, 8), kind(0, 7), nvars(1, 3), nterms(1, 6);
  const std::vector<std::string> names = {"x", "y", "z"};
  std::size_t points = 0;
  for (int instance = 0; instance < 500; ++instance) {
    const std::vector<std::string> vars(names.begin(), names.begin() + nvars(rng));
    TermList rows;
    const int n = nterms(rng);
    for (int k = 0; k < n; ++k) {
      Coefficients c;
      for (const auto& v : vars) {
        if (const int a = coef(rng); a != 0) c[v] = a;
      }
      rows.push_back(LinearTerm(std::move(c), bound(rng), kind(rng) == 0 ? Relation::Eq : Relation::Leq));
    }
    const std::string drop = vars.back();
    const TermList projected = eliminate(rows, {drop});
    std::vector<std::vector<double>> grid_points;
    for (double x = -3.0; x <= 3.0; x += 0.25) {
      if (vars.size() < 3) {
        grid_points.push_back({x});
        continue;
      }
      for (double y = -3.0; y <= 3.0; y += 0.5) grid_points.push_back({x, y});
    }
    for (const auto& g : grid_points) {
      Assignment p;
      for (std::size_t i = 0; i + 1 < vars.size(); ++i) p[vars[i]] = g[i];
      // Feasible drop values form an interval whose ends are row breakpoints.
      std::vector<double> candidates = {-1e4, 0.0, 1e4};
      for (const auto& t : rows) {
        const double c = t.coefficient(drop);
        if (c == 0.0) continue;
        Assignment zero = p;
        zero[drop] = 0.0;
        candidates.push_back((t.bound() - t.lhs().evaluate(zero)) / c);
      }
      bool exists = false;
      for (double v : candidates) {
        Assignment full = p;
        full[drop] = v;
        exists = exists || rows.satisfied_by(full, 1e-6);
      }
      ++points;
      if (exists != projected.satisfied_by(p, 1e-6)) {
        detail += "projection mismatch at instance " + std::to_string(instance) + "; ";
        return false;
      }
    }
  }
  detail += "projection 500 instances / " + std::to_string(points) + " points ok; ";
  return true;
}

bool parser_suite(std::string& detail) {
  std::mt19937_64 rng(4242);
  const std::vector<std::string> names = {"u", "soc_0", "T_out", "w_nom", "dT_3"};
  std::uniform_int_distribution<int> nterms(1, 6), coef(-999, 999), pick(0, 4), rel(0, 4);
  for (int trial = 0; trial < 500; ++trial) {
    TermList original;
    const int n = nterms(rng);
    for (int k = 0; k < n; ++k) {
      Coefficients c;
      const int used = 1 + pick(rng) % 3;
      for (int v = 0; v < used; ++v) c[names[pick(rng)]] = coef(rng) / 10.0;
      original.push_back(LinearTerm(std::move(c), coef(rng) / 10.0, rel(rng) == 0 ? Relation::Eq : Relation::Leq));
    }
    const TermList display = parse_constraints(render(original));
    const TermList exact = parse_constraints(render(original, NumberStyle::Exact));
    if (!equivalent(original, display) || !equivalent(original, exact)) {
      detail += "parser round trip failed at trial " + std::to_string(trial) + "; ";
      return false;
    }
  }
  detail += "parser 500 lists ok; ";
  return true;
}

bool composition_suite(std::string& detail) {
  std::mt19937_64 rng(1312);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto row = [&](const std::vector<std::string>& vars) {
    std::string out;
    for (const auto& v : vars) {
      const int c = pick(-3, 3);
      if (c != 0) out += (c < 0 ? " - " : " + ") + std::to_string(std::abs(c)) + " " + v;
    }
    if (out.empty()) out = vars.front();
    return out + " <= " + std::to_string(pick(-1, 4));
  };
  auto rows = [&](const std::vector<std::string>& vars, int n) {
    std::vector<std::string> out;
    for (int k = 0; k < n; ++k) out.push_back(row(vars));
    return out;
  };
  std::vector<double> grid;
  for (double v = -3.0; v <= 3.0; v += 0.5) grid.push_back(v);

  int pairs = 0, composed = 0, attempts = 0;
  while (pairs < 100 && attempts < 20000) {
    ++attempts;
    const PC up = PC::from_strings({"x"}, {"m"}, {"|x| <= " + std::to_string(pick(1, 3))}, rows({"x", "m"}, pick(1, 3)));
    const PC down = PC::from_strings({"m"}, {"z"}, rows({"m"}, pick(0, 2)), rows({"m", "z"}, pick(1, 3)));
    if (!up.is_consistent() || !down.is_consistent()) continue;
    ++pairs;
    PC sys;
    try {
      sys = compose(up, down);
    } catch (const IncompatibilityError&) {
      continue;
    }
    ++composed;
    // Under the system assumptions, the upstream output meets the downstream
    // assumptions and every joint behavior satisfies the system guarantees.
    for (double x : grid) {
      for (double m : grid) {
        for (double z : grid) {
          const Assignment p{{"x", x}, {"m", m}, {"z", z}};
          if (!sys.assumptions().satisfied_by(p, 1e-6) || !up.guarantees().satisfied_by(p, 1e-6)) continue;
          if (!down.assumptions().satisfied_by(p, 1e-6)) {
            detail += "downstream assumption violated in pair " + std::to_string(pairs) + "; ";
            return false;
          }
          if (down.guarantees().satisfied_by(p, 1e-6) && !sys.guarantees().satisfied_by(p, 1e-6)) {
            detail += "system guarantee violated in pair " + std::to_string(pairs) + "; ";
            return false;
          }
        }
      }
    }
  }
  detail += "composition " + std::to_string(pairs) + " pairs (" + std::to_string(composed) + " compatible) ok";
  return pairs == 100 && composed > 0;
}

Outcome property_suites() {
  std::string detail;
  const bool a = projection_suite(detail);
  const bool b = parser_suite(detail);
  const bool c = composition_suite(detail);
  return {a && b && c, detail};
}

}  // namespace

int main() {
  load_tolerance_from_env();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"series composition golden result", composition_golden},
      {"incompatibility diagnostic golden result", diagnostic_golden},
      {"quotient golden result and soundness", quotient_golden},
      {"viewpoint merge golden result", merge_golden},
      {"5-step power chain structure", power_chain_structure},
      {"mission sweep 20 x 20", mission_sweep},
      {"exhaust and outlet bound properties over the grid", exhaust_properties},
      {"design-space validity pattern", design_space_pattern},
      {"tolerance optimizer", tolerance_optimizer},
      {"interactivity budget", interactivity},
      {"property suites", property_suites},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s [%.0f ms]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), ms_since(start));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
