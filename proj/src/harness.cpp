// Copyright 2026 The txnav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "txnav/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "txnav/baseline.hpp"
#include "txnav/error.hpp"
#include "txnav/pn.hpp"
#include "txnav/pt.hpp"
#include "txnav/scenario_io.hpp"

namespace txnav::harness {

namespace {

using nlohmann::json;

constexpr std::uint64_t kStartsTag = 0x5354415254ULL;

std::string g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

template <class T>
std::vector<T> read_list(const json& j, const char* key, std::vector<std::string>& errors) {
  std::vector<T> out;
  if (!j.contains(key)) return out;
  const json& v = j.at(key);
  if (!v.is_array()) {
    errors.push_back(std::string("grid.") + key + ": expected a list");
    return out;
  }
  for (const json& e : v) {
    if (!e.is_number()) {
      errors.push_back(std::string("grid.") + key + ": entries must be numbers");
      return {};
    }
    out.push_back(e.get<T>());
  }
  return out;
}

bool is_pt(Controller c) { return c == Controller::ModelBasedPt || c == Controller::LearningPt; }

bool completed(const EpisodeLog& log, const Scenario& s) {
  if (log.capped) return false;
  return s.goal ? log.reached_goal : log.emptied;
}

EpisodeLog run_one(const Scenario& s, Controller controller, const Configuration& cfg, std::uint64_t seed,
                   bool exploit_only, int max_steps, const grid::ValueGrid* model) {
  switch (controller) {
    case Controller::ModelBasedPt:
    case Controller::LearningPt: {
      pt::PtConfig pc;
      pc.mode = controller == Controller::ModelBasedPt ? pt::Mode::ModelBased : pt::Mode::Learning;
      pc.dp.radius = cfg.radius;
      pc.dp.sweeps = cfg.sweeps;
      pc.llr.neighbors = cfg.neighbors;
      pc.max_steps = max_steps;
      return pt::run_pt_episode(s, pc, seed, model);
    }
    case Controller::ModelBasedPn:
    case Controller::LearningPn: {
      pn::PnConfig pc = pn::learning_config(s);
      pc.mode = controller == Controller::ModelBasedPn ? pn::Mode::ModelBased : pn::Mode::Learning;
      pc.exploit_only = exploit_only;
      pc.max_steps = max_steps;
      return pn::run_pn_episode(s, pc, seed);
    }
    case Controller::Gradient: {
      baseline::GradientConfig gc;
      gc.llr.neighbors = cfg.neighbors;
      gc.max_steps = max_steps;
      return baseline::run_gradient_episode(s, gc, seed);
    }
  }
  throw config_error("unknown controller");
}

void validate_spec(const ExperimentSpec& spec) {
  std::vector<std::string> errors;
  if (spec.runs < 1) errors.push_back("runs: must be at least 1");
  if (spec.random_starts < 0) errors.push_back("random_starts: must be nonnegative");
  if (spec.max_steps < 0) errors.push_back("max_steps: must be nonnegative");
  if (spec.start_buffer && !(*spec.start_buffer >= 0.0)) errors.push_back("start_buffer: must be nonnegative");
  for (int r : spec.grid.radius)
    if (r < 0) errors.push_back("grid.radius: values must be nonnegative");
  for (int n : spec.grid.neighbors) {
    if (n < 1) errors.push_back("grid.neighbors: values must be at least 1");
    if (spec.controller == Controller::Gradient && n < 3)
      errors.push_back("grid.neighbors: the gradient controller needs at least 3");
  }
  for (int l : spec.grid.sweeps)
    if (l < 0) errors.push_back("grid.sweeps: values must be nonnegative");
  for (double v : spec.grid.rice_v)
    if (!std::isfinite(v)) errors.push_back("grid.rice_v: values must be finite");
  for (const RobotState& st : spec.grid.starts)
    if (!(st.buffer >= 0.0)) errors.push_back("grid.starts: buffers must be nonnegative");
  if (spec.scenario.empty()) errors.push_back("scenario: missing");
  if (!errors.empty()) {
    std::string msg = "invalid experiment:";
    for (const std::string& e : errors) msg += "\n  " + e;
    throw config_error(msg);
  }
}

ExperimentSpec make(std::string name, std::string scenario, Controller c, std::uint64_t seed) {
  ExperimentSpec s;
  s.name = std::move(name);
  s.scenario = std::move(scenario);
  s.controller = c;
  s.seed = seed;
  return s;
}

}  // namespace

std::string_view controller_name(Controller c) {
  switch (c) {
    case Controller::ModelBasedPt: return "model-based-pt";
    case Controller::LearningPt: return "learning-pt";
    case Controller::ModelBasedPn: return "model-based-pn";
    case Controller::LearningPn: return "learning-pn";
    case Controller::Gradient: return "gradient";
  }
  return "unknown";
}

Controller parse_controller(std::string_view name) {
  for (Controller c : {Controller::ModelBasedPt, Controller::LearningPt, Controller::ModelBasedPn,
                       Controller::LearningPn, Controller::Gradient})
    if (controller_name(c) == name) return c;
  throw config_error("unknown controller '" + std::string(name) + "'");
}

ExperimentSpec parse_experiment(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text, nullptr, true, true);
  } catch (const json::exception& e) {
    throw config_error(std::string("experiment: ") + e.what());
  }
  if (!j.is_object()) throw config_error("experiment: expected a JSON object");

  static const std::vector<std::string> known{"name",         "scenario",     "controller", "grid",
                                              "runs",         "seed",         "random_starts", "start_buffer",
                                              "exploit_only", "max_steps",    "write_episodes"};
  std::vector<std::string> errors;
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) errors.push_back(key + ": unknown field");

  ExperimentSpec spec;
  try {
    spec.name = j.value("name", spec.name);
    spec.scenario = j.value("scenario", std::string());
    if (j.contains("controller")) {
      try {
        spec.controller = parse_controller(j.at("controller").get<std::string>());
      } catch (const Error& e) {
        errors.push_back(std::string("controller: ") + e.what());
      }
    } else {
      errors.push_back("controller: missing");
    }
    spec.runs = j.value("runs", 1);
    spec.seed = j.value("seed", std::uint64_t{1});
    spec.random_starts = j.value("random_starts", 0);
    if (j.contains("start_buffer")) spec.start_buffer = j.at("start_buffer").get<double>();
    spec.exploit_only = j.value("exploit_only", false);
    spec.max_steps = j.value("max_steps", 0);
    spec.write_episodes = j.value("write_episodes", true);
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      spec.grid.radius = read_list<int>(g, "radius", errors);
      spec.grid.neighbors = read_list<int>(g, "neighbors", errors);
      spec.grid.sweeps = read_list<int>(g, "sweeps", errors);
      spec.grid.rice_v = read_list<double>(g, "rice_v", errors);
      if (g.contains("starts")) {
        for (const json& st : g.at("starts")) {
          if (!st.is_array() || (st.size() != 2 && st.size() != 3)) {
            errors.push_back("grid.starts: entries must be [x, y] or [x, y, buffer]");
            continue;
          }
          RobotState r;
          r.position = {st[0].get<double>(), st[1].get<double>()};
          r.buffer = st.size() == 3 ? st[2].get<double>() : -1.0;
          spec.grid.starts.push_back(r);
        }
      }
    }
  } catch (const json::exception& e) {
    errors.push_back(std::string("type error: ") + e.what());
  }
  if (!errors.empty()) {
    std::string msg = "invalid experiment:";
    for (const std::string& e : errors) msg += "\n  " + e;
    throw config_error(msg);
  }
  return spec;
}

ExperimentSpec load_experiment_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read experiment file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment(ss.str());
}

std::vector<std::string> sweep_names() { return {"pt-tuning", "pt-baselines", "pt-random", "pn-variance", "pn-baseline"}; }

std::vector<ExperimentSpec> builtin_sweep(const std::string& name, std::uint64_t seed) {
  std::vector<ExperimentSpec> out;
  const RobotState tuning_start{{10.0, 170.0}, {}, 1000.0};
  if (name == "pt-tuning") {
    ExperimentSpec s = make("pt-tuning", "pt-obstacles", Controller::LearningPt, seed);
    s.grid.radius = {1, 2, 3, 4, 5, 6};
    s.grid.neighbors = {1, 3, 4, 5, 6};
    s.grid.starts = {tuning_start};
    out.push_back(s);
  } else if (name == "pt-baselines") {
    for (Controller c : {Controller::ModelBasedPt, Controller::LearningPt}) {
      ExperimentSpec s = make(std::string("pt-baselines-obstacles-") + std::string(controller_name(c)),
                              "pt-obstacles", c, seed);
      s.random_starts = 18;
      out.push_back(s);
    }
    std::vector<RobotState> line;
    for (int y = 10; y <= 190; y += 10) line.push_back({{100.0, static_cast<double>(y)}, {}, 1000.0});
    for (Controller c : {Controller::ModelBasedPt, Controller::LearningPt, Controller::Gradient}) {
      ExperimentSpec s = make(std::string("pt-baselines-free-") + std::string(controller_name(c)), "pt-free", c, seed);
      s.grid.starts = line;
      if (c == Controller::Gradient) s.grid.neighbors = {3};
      out.push_back(s);
    }
  } else if (name == "pt-random") {
    ExperimentSpec s = make("pt-random", "pt-obstacles", Controller::LearningPt, seed);
    s.grid.radius = {1, 2, 3, 4, 5, 6};
    s.grid.neighbors = {1};
    s.grid.rice_v = {15.0};
    s.grid.starts = {tuning_start};
    s.runs = 20;
    out.push_back(s);
  } else if (name == "pn-variance") {
    ExperimentSpec s = make("pn-variance", "pn-single", Controller::LearningPn, seed);
    s.grid.rice_v = {0.0, 5.0, 10.0, 15.0, 20.0, 30.0};
    s.grid.starts = {{{30.0, 140.0}, {}, 1000.0}, {{30.0, 140.0}, {}, 250.0}};
    s.runs = 30;
    out.push_back(s);
  } else if (name == "pn-baseline") {
    for (Controller c : {Controller::LearningPn, Controller::Gradient}) {
      ExperimentSpec s = make(std::string("pn-baseline-") + std::string(controller_name(c)), "pn-single", c, seed);
      s.random_starts = 10;
      s.start_buffer = 250.0;
      s.grid.rice_v = {15.0};
      if (c == Controller::Gradient) s.grid.neighbors = {3};
      s.runs = 30;
      out.push_back(s);
    }
  } else {
    throw config_error("unknown sweep '" + name + "'");
  }
  return out;
}

std::vector<Position> random_starts(const Scenario& s, int count, std::uint64_t seed) {
  Rng rng = make_stream(seed, Stream::Starts);
  std::uniform_real_distribution<double> ux(s.domain.x_lo, s.domain.x_hi), uy(s.domain.y_lo, s.domain.y_hi);
  std::vector<Position> out;
  while (static_cast<int>(out.size()) < count) {
    const double x = ux(rng);
    const double y = uy(rng);
    if (!in_obstacle({x, y}, s)) out.push_back({x, y});
  }
  return out;
}

std::vector<Configuration> expand(const ExperimentSpec& spec, const Scenario& s) {
  std::vector<RobotState> starts;
  for (RobotState r : spec.grid.starts) {
    if (r.buffer < 0.0) r.buffer = s.initial.buffer;
    r.extra = s.initial.extra;
    starts.push_back(r);
  }
  if (spec.random_starts > 0) {
    const double b = spec.start_buffer.value_or(s.buffer_max);
    for (Position p : random_starts(s, spec.random_starts, derive_seed(spec.seed, {kStartsTag})))
      starts.push_back({p, s.initial.extra, b});
  }
  if (starts.empty()) starts.push_back(s.initial);

  const std::vector<int> radius = spec.grid.radius.empty() ? std::vector<int>{4} : spec.grid.radius;
  const std::vector<int> neighbors =
      spec.grid.neighbors.empty() ? std::vector<int>{spec.controller == Controller::Gradient ? 3 : 1}
                                  : spec.grid.neighbors;
  const std::vector<int> sweeps = spec.grid.sweeps.empty() ? std::vector<int>{10} : spec.grid.sweeps;
  std::vector<std::optional<double>> fading;
  if (spec.grid.rice_v.empty()) fading.push_back(std::nullopt);
  for (double v : spec.grid.rice_v) fading.push_back(v);

  std::vector<Configuration> out;
  for (const RobotState& st : starts)
    for (int r : radius)
      for (int n : neighbors)
        for (int l : sweeps)
          for (const std::optional<double>& v : fading) out.push_back({out.size(), r, n, l, v, st});
  return out;
}

Scenario configure(const Scenario& s, const Configuration& cfg) {
  Scenario out = s;
  out.initial = cfg.start;
  if (cfg.rice_v) out.fading = *cfg.rice_v < 0.0 ? FadingModel{} : make_fading(*cfg.rice_v);
  return out;
}

std::uint64_t run_seed(std::uint64_t master, std::size_t config, std::size_t run) {
  return derive_seed(master, {static_cast<std::uint64_t>(config), static_cast<std::uint64_t>(run)});
}

EpisodeLog run_episode(const Scenario& s, Controller controller, const Configuration& cfg, std::uint64_t seed,
                       bool exploit_only, int max_steps) {
  return run_one(configure(s, cfg), controller, cfg, seed, exploit_only, max_steps, nullptr);
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
  validate_spec(spec);
  return run_experiment(spec, resolve_scenario(spec.scenario), options);
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const Scenario& s, const RunOptions& options) {
  validate_spec(spec);
  if (spec.controller == Controller::Gradient && !s.obstacles.empty())
    throw config_error("controller: the gradient controller needs an obstacle-free scenario");
  if (!is_pt(spec.controller) && spec.controller != Controller::Gradient && !s.goal)
    throw config_error("controller: navigation controllers need a scenario with a goal");
  const std::vector<Configuration> configs = expand(spec, s);

  // The model-based value function depends only on the deterministic rate
  // field, so one solve serves every configuration.
  std::optional<grid::ValueGrid> model;
  if (spec.controller == Controller::ModelBasedPt) model.emplace(pt::solve_model_based(s, pt::PtConfig{}));

  const std::size_t runs = static_cast<std::size_t>(spec.runs);
  const std::size_t total = configs.size() * runs;
  std::vector<EpisodeLog> logs(total);
  std::vector<Scenario> scenarios;
  scenarios.reserve(configs.size());
  for (const Configuration& c : configs) scenarios.push_back(configure(s, c));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t t = next++; t < total; t = next++) {
      const std::size_t ci = t / runs, ri = t % runs;
      try {
        logs[t] = run_one(scenarios[ci], spec.controller, configs[ci], run_seed(spec.seed, ci, ri), spec.exploit_only,
                          spec.max_steps, model ? &*model : nullptr);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult res;
  res.name = spec.name;
  for (std::size_t ci = 0; ci < configs.size(); ++ci) {
    ConfigSummary row;
    row.config = configs[ci];
    row.runs = spec.runs;
    std::vector<double> done;
    for (std::size_t ri = 0; ri < runs; ++ri) {
      const EpisodeLog& log = logs[ci * runs + ri];
      const bool ok = completed(log, scenarios[ci]);
      row.run_steps.push_back(log.steps());
      row.run_completed.push_back(ok);
      row.capped += log.capped ? 1 : 0;
      row.collided += log.collided ? 1 : 0;
      row.reached_goal += log.reached_goal ? 1 : 0;
      if (ok) done.push_back(log.steps());
    }
    row.completed = static_cast<int>(done.size());
    row.steps = done.empty() ? Interval{std::nan(""), 0.0} : confidence_interval(done);
    res.summaries.push_back(std::move(row));
  }

  if (!options.out_dir.empty()) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::path(options.out_dir) / spec.name;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string());
    if (spec.write_episodes) {
      fs::create_directories(dir / "episodes", ec);
      if (ec) throw Error(ErrorCode::IoError, "cannot create " + (dir / "episodes").string());
      for (std::size_t t = 0; t < total; ++t) {
        char file[48];
        std::snprintf(file, sizeof file, "c%03zu_r%03zu.csv", t / runs, t % runs);
        std::ofstream out(dir / "episodes" / file, std::ios::binary);
        write_episode_csv(out, logs[t]);
        if (!out) throw Error(ErrorCode::IoError, "write failed: " + (dir / "episodes" / file).string());
      }
    }
    std::ofstream out(dir / "summary.csv", std::ios::binary);
    write_summary_csv(out, spec, res.summaries);
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + (dir / "summary.csv").string());
  }

  if (options.keep_logs) {
    res.logs.resize(configs.size());
    for (std::size_t t = 0; t < total; ++t) res.logs[t / runs].push_back(std::move(logs[t]));
  }
  return res;
}

void write_episode_csv(std::ostream& os, const EpisodeLog& log) {
  os << "k,p1,p2,b,r,u_v,u_h,reward\n";
  for (const StepRecord& r : log.rows)
    os << r.k << ',' << g9(r.position.x) << ',' << g9(r.position.y) << ',' << g9(r.buffer) << ',' << g9(r.rate) << ','
       << g9(r.action.velocity) << ',' << g9(r.action.heading) << ',' << g9(r.reward) << '\n';
}

std::string episode_csv(const EpisodeLog& log) {
  std::ostringstream os;
  write_episode_csv(os, log);
  return os.str();
}

EpisodeLog read_episode_csv(std::istream& is, const Scenario& s) {
  EpisodeLog log;
  std::string line;
  if (!std::getline(is, line) || line.rfind("k,p1,p2,b,r,u_v,u_h,reward", 0) != 0)
    throw config_error("episode CSV: missing or unexpected header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ls, cell, ',')) {
      try {
        v.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw config_error("episode CSV: bad number '" + cell + "'");
      }
    }
    if (v.size() != 8) throw config_error("episode CSV: expected 8 columns");
    StepRecord r;
    r.k = static_cast<int>(v[0]);
    r.position = {v[1], v[2]};
    r.buffer = v[3];
    r.rate = v[4];
    r.action = {v[5], v[6]};
    r.reward = v[7];
    log.rows.push_back(r);
  }
  if (log.rows.empty()) {
    log.final_state = s.initial;
  } else {
    const StepRecord& last = log.rows.back();
    log.final_state.position = apply_motion(last.position, last.action, s);
    log.final_state.buffer = buffer_step(last.buffer, last.rate, s.sample_period);
  }
  log.emptied = log.final_state.buffer <= 0.0;
  return log;
}

void write_summary_csv(std::ostream& os, const ExperimentSpec& spec, std::span<const ConfigSummary> rows) {
  os << "config,controller,radius,neighbors,sweeps,rice_v,start_p1,start_p2,start_b,runs,completed,capped,collided,"
        "reached_goal,mean_steps,ci95_half_width_student_t\n";
  for (const ConfigSummary& r : rows) {
    const Configuration& c = r.config;
    std::string fading = "scenario";
    if (c.rice_v) fading = *c.rice_v < 0.0 ? "off" : g9(*c.rice_v);
    os << c.index << ',' << controller_name(spec.controller) << ',' << c.radius << ',' << c.neighbors << ','
       << c.sweeps << ',' << fading << ',' << g9(c.start.position.x) << ',' << g9(c.start.position.y) << ','
       << g9(c.start.buffer) << ',' << r.runs << ',' << r.completed << ',' << r.capped << ',' << r.collided << ','
       << r.reached_goal << ',' << g9(r.steps.mean) << ',' << g9(r.steps.half_width) << '\n';
  }
}

}  // namespace txnav::harness
