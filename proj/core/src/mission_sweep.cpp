#include "cforge/mission_sweep.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "cforge/contract_json.hpp"
#include "cforge/errors.hpp"
#include "cforge/parallel.hpp"
#include "cforge/sampling.hpp"
#include "cforge/svg.hpp"

namespace cforge::mission {
namespace {

using nlohmann::json;

// Power and data rates come first; these are clamped at zero when sampled.
constexpr std::size_t kNonNegativeCount = 7;

std::array<Range*, kCapabilityCount> fields(TaskHyperparameters& h) {
  return {&h.chrg_gen,  &h.dsn_cons,   &h.sbo_cons,  &h.tcm_h_cons, &h.tcm_dv_cons, &h.dsn_rate,
          &h.sbo_sgen,  &h.dsn_noise,  &h.chrg_noise, &h.sbo_imp,   &h.tcm_dv_imp,  &h.tcm_dv_noise};
}

std::array<const Range*, kCapabilityCount> fields(const TaskHyperparameters& h) {
  auto f = fields(const_cast<TaskHyperparameters&>(h));
  std::array<const Range*, kCapabilityCount> out{};
  for (std::size_t i = 0; i < kCapabilityCount; ++i) out[i] = f[i];
  return out;
}

Range range_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(what + " must be a [min, max] pair of numbers");
  }
  Range r{j[0].get<double>(), j[1].get<double>()};
  if (!(r.min <= r.max)) throw ConfigError(what + ": min exceeds max");
  return r;
}

json range_to_json_pair(const Range& r) { return json::array({r.min, r.max}); }

// The sampler needs low < high. A degenerate range is sampled on a dummy
// interval and pinned back by clamp_to.
Interval sample_interval(const Range& r) { return r.min < r.max ? Interval{r.min, r.max} : Interval{r.min, r.min + 1.0}; }

double clamp_to(const Range& r, double v) { return r.min < r.max ? v : r.min; }

std::string csv_number(double v) {
  std::ostringstream o;
  o.precision(17);
  o << v;
  return o.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

}  // namespace

const std::array<std::string, kCapabilityCount>& capability_names() {
  static const std::array<std::string, kCapabilityCount> names = {
      "chrg_gen", "dsn_cons",  "sbo_cons",   "tcm_h_cons", "tcm_dv_cons", "dsn_rate",
      "sbo_sgen", "dsn_noise", "chrg_noise", "sbo_imp",    "tcm_dv_imp",  "tcm_dv_noise"};
  return names;
}

SweepConfig::SweepConfig() {
  capabilities = {{
      {{0.2, 1.0}, {0.0, 0.2}},     // chrg_gen
      {{0.1, 1.0}, {0.0, 0.1}},     // dsn_cons
      {{0.1, 1.0}, {0.0, 0.1}},     // sbo_cons
      {{0.1, 1.0}, {0.0, 0.1}},     // tcm_h_cons
      {{0.1, 1.0}, {0.0, 0.1}},     // tcm_dv_cons
      {{0.1, 0.5}, {0.0, 0.1}},     // dsn_rate
      {{0.05, 0.4}, {0.0, 0.1}},    // sbo_sgen
      {{0.5, 3.0}, {0.0, 0.5}},     // dsn_noise
      {{0.5, 3.0}, {0.0, 0.5}},     // chrg_noise
      {{0.0, 0.4}, {0.0, 0.2}},     // sbo_imp
      {{0.1, 0.5}, {0.0, 0.1}},     // tcm_dv_imp
      {{0.01, 0.1}, {0.0, 0.02}},   // tcm_dv_noise
  }};
}

SweepConfig sweep_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("sweep configuration must be a JSON object");
  SweepConfig c;
  try {
    if (j.contains("sequence")) c.sequence = parse_sequence(j.at("sequence").get<std::vector<std::string>>());
    if (c.sequence.empty()) throw ConfigError("sequence must not be empty");
    if (j.contains("scenarios")) c.scenarios = j.at("scenarios").get<std::size_t>();
    if (j.contains("requirement_sets")) c.requirement_sets = j.at("requirement_sets").get<std::size_t>();
    if (c.scenarios == 0 || c.requirement_sets == 0) throw ConfigError("sample counts must be positive");
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<unsigned>();
    if (j.contains("svg")) c.svg = j.at("svg").get<bool>();
    if (j.contains("capabilities")) {
      const auto& caps = j.at("capabilities");
      if (!caps.is_object()) throw ConfigError("capabilities must be an object");
      for (const auto& [name, spec] : caps.items()) {
        const auto& names = capability_names();
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw ConfigError("unknown capability '" + name + "'");
        auto& space = c.capabilities[static_cast<std::size_t>(it - names.begin())];
        if (spec.contains("mean")) space.mean = range_from_json(spec.at("mean"), name + ".mean");
        if (spec.contains("dev")) space.dev = range_from_json(spec.at("dev"), name + ".dev");
        if (space.dev.min < 0.0) throw ConfigError(name + ".dev must be non-negative");
      }
    }
    if (j.contains("requirements")) {
      const auto& r = j.at("requirements");
      if (r.contains("min_soc")) c.min_soc = range_from_json(r.at("min_soc"), "min_soc");
      if (r.contains("min_step_duration"))
        c.min_step_duration = range_from_json(r.at("min_step_duration"), "min_step_duration");
      if (r.contains("initial_data_volume"))
        c.initial_data_volume = range_from_json(r.at("initial_data_volume"), "initial_data_volume");
      if (r.contains("initial_uncertainty"))
        c.initial_uncertainty = range_from_json(r.at("initial_uncertainty"), "initial_uncertainty");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid sweep configuration: ") + e.what());
  }
  return c;
}

json sweep_config_to_json(const SweepConfig& c) {
  json caps = json::object();
  for (std::size_t i = 0; i < kCapabilityCount; ++i) {
    caps[capability_names()[i]] = {{"mean", range_to_json_pair(c.capabilities[i].mean)},
                                   {"dev", range_to_json_pair(c.capabilities[i].dev)}};
  }
  json seq = json::array();
  for (auto k : c.sequence) seq.push_back(std::string(to_string(k)));
  return {{"sequence", seq},
          {"scenarios", c.scenarios},
          {"requirement_sets", c.requirement_sets},
          {"seed", c.seed},
          {"jobs", c.jobs},
          {"svg", c.svg},
          {"capabilities", caps},
          {"requirements",
           {{"min_soc", range_to_json_pair(c.min_soc)},
            {"min_step_duration", range_to_json_pair(c.min_step_duration)},
            {"initial_data_volume", range_to_json_pair(c.initial_data_volume)},
            {"initial_uncertainty", range_to_json_pair(c.initial_uncertainty)}}}};
}

std::vector<TaskHyperparameters> sample_scenarios(const SweepConfig& config) {
  std::vector<Interval> dims;
  for (const auto& cap : config.capabilities) {
    dims.push_back(sample_interval(cap.mean));
    dims.push_back(sample_interval(cap.dev));
  }
  const auto points = latin_hypercube_sample(config.scenarios, dims, config.seed);
  std::vector<TaskHyperparameters> out(points.size());
  for (std::size_t s = 0; s < points.size(); ++s) {
    auto f = fields(out[s]);
    for (std::size_t i = 0; i < kCapabilityCount; ++i) {
      const double mean = clamp_to(config.capabilities[i].mean, points[s][2 * i]);
      const double dev = clamp_to(config.capabilities[i].dev, points[s][2 * i + 1]);
      Range r{mean - dev, mean + dev};
      if (i < kNonNegativeCount) {
        r.min = std::max(r.min, 0.0);
        r.max = std::max(r.max, 0.0);
      }
      *f[i] = r;
    }
  }
  return out;
}

std::vector<OperationalRequirements> sample_requirements(const SweepConfig& config) {
  const std::vector<Range> ranges = {config.min_soc, config.min_step_duration, config.initial_data_volume,
                                     config.initial_uncertainty};
  std::vector<Interval> dims;
  for (const auto& r : ranges) dims.push_back(sample_interval(r));
  // A distinct stream from the scenario design.
  const auto points = latin_hypercube_sample(config.requirement_sets, dims, config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<OperationalRequirements> out;
  for (const auto& p : points) {
    out.push_back({clamp_to(ranges[0], p[0]), clamp_to(ranges[1], p[1]), clamp_to(ranges[2], p[2]),
                   clamp_to(ranges[3], p[3])});
  }
  return out;
}

SweepResult run_sweep(const SweepConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  SweepResult result;
  result.scenarios = sample_scenarios(config);
  result.requirements = sample_requirements(config);
  const std::size_t ns = result.scenarios.size(), nr = result.requirements.size();
  const std::size_t steps = config.sequence.size();

  std::vector<PolyhedralContract> built(ns);
  std::vector<char> ok(ns, 0);
  result.scenario_errors.assign(ns, "");
  parallel_for(ns, config.jobs, [&](std::size_t s) {
    try {
      built[s] = build_scenario(config.sequence, result.scenarios[s]);
      ok[s] = 1;
    } catch (const IncompatibilityError& e) {
      result.scenario_errors[s] = e.what();
    }
  });

  result.rows.resize(ns * nr);
  parallel_for(ns * nr, config.jobs, [&](std::size_t i) {
    SweepRow& row = result.rows[i];
    row.scenario = i / nr;
    row.requirement = i % nr;
    const auto& req = result.requirements[row.requirement];
    if (ok[row.scenario]) row.result = check_schedulable(built[row.scenario], req, steps);
    const Scores sc = score(result.scenarios[row.scenario], req);
    row.result.scenario_score = sc.scenario;
    row.result.requirement_score = sc.requirement;
  });
  for (const auto& row : result.rows) result.admissible += row.result.admissible ? 1 : 0;
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

json schedule_to_json(const ScheduleResult& r) {
  json j = {{"admissible", r.admissible},
            {"scenario_score", r.scenario_score},
            {"requirement_score", r.requirement_score},
            {"merged", contract_to_json(r.merged)}};
  if (r.admissible) {
    j["initial_soc"] = range_to_json(r.initial_soc);
    json bounds = json::array();
    for (const auto& b : r.soc_bounds) bounds.push_back(range_to_json(b));
    j["soc_bounds"] = bounds;
    j["avg_soc_min"] = r.avg_soc_min;
    j["avg_soc_max"] = r.avg_soc_max;
  }
  return j;
}

json hyperparameters_to_json(const TaskHyperparameters& h) {
  json j = json::object();
  const auto f = fields(h);
  for (std::size_t i = 0; i < kCapabilityCount; ++i) j[capability_names()[i]] = range_to_json_pair(*f[i]);
  return j;
}

TaskHyperparameters hyperparameters_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("hyperparameters must be an object");
  TaskHyperparameters h;
  auto f = fields(h);
  for (const auto& [name, value] : j.items()) {
    const auto& names = capability_names();
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ConfigError("unknown capability '" + name + "'");
    *f[static_cast<std::size_t>(it - names.begin())] = range_from_json(value, name);
  }
  h.validate();
  return h;
}

OperationalRequirements requirements_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("requirements must be an object");
  OperationalRequirements r;
  try {
    if (j.contains("min_soc")) r.min_soc = j.at("min_soc").get<double>();
    if (j.contains("min_step_duration")) r.min_step_duration = j.at("min_step_duration").get<double>();
    if (j.contains("initial_data_volume")) r.initial_data_volume = j.at("initial_data_volume").get<double>();
    if (j.contains("initial_uncertainty")) r.initial_uncertainty = j.at("initial_uncertainty").get<double>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid requirements: ") + e.what());
  }
  return r;
}

json requirements_to_json(const OperationalRequirements& r) {
  return {{"min_soc", r.min_soc},
          {"min_step_duration", r.min_step_duration},
          {"initial_data_volume", r.initial_data_volume},
          {"initial_uncertainty", r.initial_uncertainty}};
}

std::string soc_bounds_svg(const ScheduleResult& result, const std::string& title) {
  svg::Band band{"soc bounds", "#1f77b4", {}, {}, {}};
  if (result.admissible) {
    band.x.push_back(0.0);
    band.lo.push_back(result.initial_soc.lower);
    band.hi.push_back(result.initial_soc.upper);
    for (std::size_t k = 0; k < result.soc_bounds.size(); ++k) {
      band.x.push_back(static_cast<double>(k + 1));
      band.lo.push_back(result.soc_bounds[k].lower);
      band.hi.push_back(result.soc_bounds[k].upper);
    }
  }
  svg::Chart chart{title, "step", "state of charge (%)", {band}, {}};
  return svg::render(chart);
}

void write_sweep_outputs(const SweepResult& result, const SweepConfig& config, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ostringstream csv;
  csv << "scenario,requirement,scenario_score,requirement_score,min_soc,min_step_duration,initial_data_volume,"
         "initial_uncertainty,admissible,avg_soc_min,avg_soc_max\n";
  json bounds = json::array();
  svg::Series lo{"avg soc min", "#1f77b4", svg::Series::Style::Markers, {}};
  svg::Series hi{"avg soc max", "#ff7f0e", svg::Series::Style::Markers, {}};
  for (const auto& row : result.rows) {
    const auto& r = row.result;
    const auto& q = result.requirements[row.requirement];
    csv << row.scenario << ',' << row.requirement << ',' << csv_number(r.scenario_score) << ','
        << csv_number(r.requirement_score) << ',' << csv_number(q.min_soc) << ',' << csv_number(q.min_step_duration)
        << ',' << csv_number(q.initial_data_volume) << ',' << csv_number(q.initial_uncertainty) << ','
        << (r.admissible ? 1 : 0) << ',';
    if (r.admissible) {
      csv << csv_number(r.avg_soc_min) << ',' << csv_number(r.avg_soc_max);
      json b = schedule_to_json(r);
      b.erase("merged");
      b["scenario"] = row.scenario;
      b["requirement"] = row.requirement;
      b["hyperparameters"] = hyperparameters_to_json(result.scenarios[row.scenario]);
      b["requirements"] = requirements_to_json(q);
      bounds.push_back(std::move(b));
      const double x = r.scenario_score + r.requirement_score;
      lo.points.emplace_back(x, r.avg_soc_min);
      hi.points.emplace_back(x, r.avg_soc_max);
      if (config.svg) {
        const std::string name =
            "bounds_" + std::to_string(row.scenario) + "_" + std::to_string(row.requirement) + ".svg";
        write_file(dir / name, soc_bounds_svg(r, "scenario " + std::to_string(row.scenario) + ", requirements " +
                                                     std::to_string(row.requirement)));
      }
    } else {
      csv << ',';
    }
    csv << '\n';
  }
  write_file(dir / "results.csv", csv.str());
  write_file(dir / "bounds.json", bounds.dump(2) + "\n");
  svg::Chart chart{"Average state of charge of admissible schedules", "scenario score + requirement score",
                   "average soc (%)", {}, {lo, hi}};
  write_file(dir / "scores.svg", svg::render(chart));
}

}  // namespace cforge::mission
