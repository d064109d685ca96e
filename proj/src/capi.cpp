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

#include "txnav/txnav.h"

#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <memory>
#include <string>

#include "txnav/error.hpp"
#include "txnav/harness.hpp"
#include "txnav/scenario_io.hpp"

struct txnav_scenario {
  txnav::Scenario value;
};

struct txnav_experiment {
  txnav::harness::ExperimentSpec spec;
};

struct txnav_episode {
  txnav::EpisodeLog log;
};

namespace {

thread_local std::string last_error;

txnav_status fail(txnav_status code, const std::string& msg) {
  last_error = msg;
  return code;
}

txnav_status map_code(txnav::ErrorCode c) {
  switch (c) {
    case txnav::ErrorCode::InvalidAction: return TXNAV_E_INVALID_ACTION;
    case txnav::ErrorCode::ModelError: return TXNAV_E_MODEL;
    case txnav::ErrorCode::EstimatorNotReady: return TXNAV_E_ESTIMATOR;
    case txnav::ErrorCode::ConfigError: return TXNAV_E_CONFIG;
    case txnav::ErrorCode::BracketError: return TXNAV_E_BRACKET;
    case txnav::ErrorCode::IoError: return TXNAV_E_IO;
  }
  return TXNAV_E_RUNTIME;
}

template <class F>
txnav_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return TXNAV_OK;
  } catch (const txnav::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TXNAV_E_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(TXNAV_E_RUNTIME, e.what());
  }
}

txnav::harness::Controller to_controller(txnav_controller c) {
  using txnav::harness::Controller;
  switch (c) {
    case TXNAV_MODEL_BASED_PT: return Controller::ModelBasedPt;
    case TXNAV_LEARNING_PT: return Controller::LearningPt;
    case TXNAV_MODEL_BASED_PN: return Controller::ModelBasedPn;
    case TXNAV_LEARNING_PN: return Controller::LearningPn;
    case TXNAV_GRADIENT: return Controller::Gradient;
  }
  throw txnav::config_error("unknown controller value");
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = txnav::builtin_scenario_names();
  return names;
}

const std::vector<std::string>& sweeps() {
  static const std::vector<std::string> names = txnav::harness::sweep_names();
  return names;
}

}  // namespace

extern "C" {

const char* txnav_version(void) { return "1.0.0"; }

const char* txnav_last_error(void) { return last_error.c_str(); }

size_t txnav_builtin_scenario_count(void) { return scenario_names().size(); }

const char* txnav_builtin_scenario_name(size_t index) {
  return index < scenario_names().size() ? scenario_names()[index].c_str() : nullptr;
}

txnav_status txnav_scenario_load(const char* name_or_path, txnav_scenario** out) {
  if (!name_or_path || !out) return fail(TXNAV_E_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new txnav_scenario{txnav::resolve_scenario(name_or_path)}; });
}

txnav_status txnav_scenario_parse(const char* json_text, txnav_scenario** out) {
  if (!json_text || !out) return fail(TXNAV_E_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new txnav_scenario{txnav::parse_scenario(json_text)}; });
}

const char* txnav_scenario_name(const txnav_scenario* s) { return s ? s->value.name.c_str() : nullptr; }

void txnav_scenario_free(txnav_scenario* s) { delete s; }

txnav_episode_options txnav_episode_options_default(void) {
  return {4, 1, 10, 0, 0, std::numeric_limits<double>::quiet_NaN()};
}

txnav_status txnav_episode_run(const txnav_scenario* s, txnav_controller controller,
                               const txnav_episode_options* options, uint64_t seed, txnav_episode** out) {
  if (!s || !out) return fail(TXNAV_E_ARGUMENT, "null argument");
  *out = nullptr;
  if (controller < TXNAV_MODEL_BASED_PT || controller > TXNAV_GRADIENT)
    return fail(TXNAV_E_ARGUMENT, "unknown controller value");
  const txnav_episode_options opt = options ? *options : txnav_episode_options_default();
  return guarded([&] {
    txnav::harness::Configuration cfg;
    cfg.radius = opt.radius;
    cfg.neighbors = opt.neighbors;
    cfg.sweeps = opt.sweeps;
    if (!std::isnan(opt.rice_v)) cfg.rice_v = opt.rice_v;
    cfg.start = s->value.initial;
    auto e = std::make_unique<txnav_episode>();
    e->log = txnav::harness::run_episode(s->value, to_controller(controller), cfg, seed, opt.exploit_only != 0,
                                         opt.max_steps);
    *out = e.release();
  });
}

size_t txnav_episode_steps(const txnav_episode* e) { return e ? e->log.rows.size() : 0; }

txnav_status txnav_episode_row(const txnav_episode* e, size_t index, txnav_step* out) {
  if (!e || !out) return fail(TXNAV_E_ARGUMENT, "null argument");
  if (index >= e->log.rows.size()) return fail(TXNAV_E_ARGUMENT, "row index out of range");
  const txnav::StepRecord& r = e->log.rows[index];
  *out = {r.k, r.position.x, r.position.y, r.buffer, r.rate, r.action.velocity, r.action.heading, r.reward};
  return TXNAV_OK;
}

int txnav_episode_emptied(const txnav_episode* e) { return e && e->log.emptied; }
int txnav_episode_reached_goal(const txnav_episode* e) { return e && e->log.reached_goal; }
int txnav_episode_collided(const txnav_episode* e) { return e && e->log.collided; }
int txnav_episode_capped(const txnav_episode* e) { return e && e->log.capped; }

txnav_status txnav_episode_write_csv(const txnav_episode* e, const char* path) {
  if (!e || !path) return fail(TXNAV_E_ARGUMENT, "null argument");
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw txnav::Error(txnav::ErrorCode::IoError, std::string("cannot write ") + path);
    txnav::harness::write_episode_csv(out, e->log);
    if (!out) throw txnav::Error(txnav::ErrorCode::IoError, std::string("write failed: ") + path);
  });
}

void txnav_episode_free(txnav_episode* e) { delete e; }

txnav_status txnav_experiment_load(const char* path, txnav_experiment** out) {
  if (!path || !out) return fail(TXNAV_E_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new txnav_experiment{txnav::harness::load_experiment_file(path)}; });
}

txnav_status txnav_experiment_parse(const char* json_text, txnav_experiment** out) {
  if (!json_text || !out) return fail(TXNAV_E_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new txnav_experiment{txnav::harness::parse_experiment(json_text)}; });
}

const char* txnav_experiment_name(const txnav_experiment* x) { return x ? x->spec.name.c_str() : nullptr; }

void txnav_experiment_set_seed(txnav_experiment* x, uint64_t seed) {
  if (x) x->spec.seed = seed;
}

txnav_status txnav_experiment_set_scenario(txnav_experiment* x, const char* name_or_path) {
  if (!x || !name_or_path) return fail(TXNAV_E_ARGUMENT, "null argument");
  return guarded([&] {
    txnav::resolve_scenario(name_or_path);
    x->spec.scenario = name_or_path;
  });
}

txnav_status txnav_experiment_run(const txnav_experiment* x, const char* out_dir, int jobs) {
  if (!x || !out_dir) return fail(TXNAV_E_ARGUMENT, "null argument");
  return guarded([&] {
    txnav::harness::RunOptions opt;
    opt.jobs = jobs;
    opt.out_dir = out_dir;
    txnav::harness::run_experiment(x->spec, opt);
  });
}

void txnav_experiment_free(txnav_experiment* x) { delete x; }

size_t txnav_sweep_count(void) { return sweeps().size(); }

const char* txnav_sweep_name(size_t index) { return index < sweeps().size() ? sweeps()[index].c_str() : nullptr; }

txnav_status txnav_sweep_build(const char* name, uint64_t seed, txnav_experiment*** out, size_t* count) {
  if (!name || !out || !count) return fail(TXNAV_E_ARGUMENT, "null argument");
  *out = nullptr;
  *count = 0;
  return guarded([&] {
    const std::vector<txnav::harness::ExperimentSpec> specs = txnav::harness::builtin_sweep(name, seed);
    auto list = std::make_unique<txnav_experiment*[]>(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) list[i] = new txnav_experiment{specs[i]};
    *count = specs.size();
    *out = list.release();
  });
}

void txnav_sweep_free(txnav_experiment** list, size_t count) {
  if (!list) return;
  for (size_t i = 0; i < count; ++i) delete list[i];
  delete[] list;
}

txnav_status txnav_plot(const char* episode_csv_path, const txnav_scenario* s, const char* svg_path) {
  if (!episode_csv_path || !s || !svg_path) return fail(TXNAV_E_ARGUMENT, "null argument");
  return guarded([&] {
    std::ifstream in(episode_csv_path, std::ios::binary);
    if (!in) throw txnav::Error(txnav::ErrorCode::IoError, std::string("cannot read ") + episode_csv_path);
    const txnav::EpisodeLog log = txnav::harness::read_episode_csv(in, s->value);
    txnav::harness::render_trajectory_plot(log, s->value, svg_path);
  });
}

}  // extern "C"
