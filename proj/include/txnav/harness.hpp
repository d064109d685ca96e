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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "txnav/episode.hpp"
#include "txnav/world.hpp"

/// Monte-Carlo experiment runner, statistics, CSV and SVG output.
namespace txnav::harness {

struct Interval {
  double mean = 0.0;
  double half_width = 0.0;  ///< 95% Student-t half-width
};

/// Mean and 95% Student-t half-width with n - 1 degrees of freedom. The
/// half-width is 0 for a single sample or identical samples. Throws
/// ConfigError on an empty input.
Interval confidence_interval(std::span<const double> samples);

enum class Controller { ModelBasedPt, LearningPt, ModelBasedPn, LearningPn, Gradient };

std::string_view controller_name(Controller c);
/// Throws ConfigError for an unknown name.
Controller parse_controller(std::string_view name);

/// Cartesian parameter grid. Empty lists take the controller default.
struct ParameterGrid {
  std::vector<int> radius;      ///< r_DP, default 4
  std::vector<int> neighbors;   ///< N, default 1 (3 for the gradient controller)
  std::vector<int> sweeps;      ///< l_DP, default 10
  std::vector<double> rice_v;   ///< fading parameter; negative turns fading off; default from scenario
  std::vector<RobotState> starts;  ///< default: the scenario's initial state
};

struct ExperimentSpec {
  std::string name = "experiment";
  std::string scenario;  ///< builtin name or file path
  Controller controller = Controller::LearningPt;
  ParameterGrid grid;
  int runs = 1;
  std::uint64_t seed = 1;
  /// Extra starts drawn uniformly over the domain, outside obstacles.
  int random_starts = 0;
  std::optional<double> start_buffer;  ///< buffer of drawn starts; default buffer_max
  bool exploit_only = false;
  int max_steps = 0;           ///< 0 uses the scenario limit
  bool write_episodes = true;  ///< one CSV per episode under episodes/
};

/// Parses an experiment document; the schema is described in README.md.
/// Throws ConfigError listing every invalid field.
ExperimentSpec parse_experiment(std::string_view json_text);
ExperimentSpec load_experiment_file(const std::string& path);

/// Names accepted by builtin_sweep.
std::vector<std::string> sweep_names();
/// Preset experiment batches. Throws ConfigError for an unknown name.
std::vector<ExperimentSpec> builtin_sweep(const std::string& name, std::uint64_t seed);

struct Configuration {
  std::size_t index = 0;
  int radius = 4;
  int neighbors = 1;
  int sweeps = 10;
  std::optional<double> rice_v;  ///< unset keeps the scenario fading
  RobotState start;
};

/// Expanded configurations in grid order: start, radius, neighbors, sweeps,
/// rice_v (last varies fastest).
std::vector<Configuration> expand(const ExperimentSpec& spec, const Scenario& s);

/// Uniform positions in the domain outside every obstacle.
std::vector<Position> random_starts(const Scenario& s, int count, std::uint64_t seed);

struct ConfigSummary {
  Configuration config;
  int runs = 0;
  int completed = 0;  ///< finished without hitting the step cap
  int capped = 0;
  int collided = 0;
  int reached_goal = 0;
  Interval steps;  ///< over completed runs
  std::vector<int> run_steps;
  std::vector<bool> run_completed;
};

struct ExperimentResult {
  std::string name;
  std::vector<ConfigSummary> summaries;
  std::vector<std::vector<EpisodeLog>> logs;  ///< [configuration][run], when kept
};

struct RunOptions {
  int jobs = 1;
  std::string out_dir;  ///< empty: no files written
  bool keep_logs = false;
};

/// Seed of run `run` in configuration `config`.
std::uint64_t run_seed(std::uint64_t master, std::size_t config, std::size_t run);

/// Runs every (configuration, run) episode. Throws ConfigError for an
/// invalid spec.
ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});
/// Same, with an already loaded scenario.
ExperimentResult run_experiment(const ExperimentSpec& spec, const Scenario& s, const RunOptions& options);

/// Runs a single episode of `controller` for one configuration.
EpisodeLog run_episode(const Scenario& s, Controller controller, const Configuration& cfg, std::uint64_t seed,
                       bool exploit_only = false, int max_steps = 0);
/// Scenario with the configuration's start and fading applied.
Scenario configure(const Scenario& s, const Configuration& cfg);

/// Episode CSV: k,p1,p2,b,r,u_v,u_h,reward with 9 significant digits.
void write_episode_csv(std::ostream& os, const EpisodeLog& log);
std::string episode_csv(const EpisodeLog& log);
/// Reads the rows back; flags and seed are not stored in the file. The final
/// state is rebuilt by applying the last row's action under `s`.
EpisodeLog read_episode_csv(std::istream& is, const Scenario& s);

void write_summary_csv(std::ostream& os, const ExperimentSpec& spec, std::span<const ConfigSummary> rows);

/// SVG with rate contours, obstacles, visited positions colored by buffer
/// fraction, a start marker and a goal cross when the scenario has a goal.
std::string trajectory_svg(const EpisodeLog& log, const Scenario& s);
/// Throws IoError if the file cannot be written.
void render_trajectory_plot(const EpisodeLog& log, const Scenario& s, const std::string& path);

}  // namespace txnav::harness
