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
#include <functional>
#include <span>
#include <vector>

#include "txnav/episode.hpp"
#include "txnav/llr.hpp"
#include "txnav/numopt.hpp"
#include "txnav/world.hpp"

/// Navigation-and-transmission problem: reach a goal position in minimum time
/// with the buffer empty on arrival, around a single radial antenna.
namespace txnav::pn {

/// Radial rate law C(d) = R0 * log2(1 + K / (d + h)^gamma) around `antenna`.
struct RadialRate {
  Position antenna;
  double K = 1e4;
  double h = 1.0;
  double gamma = 2.0;
  double R0 = 1.0;

  double operator()(double d) const { return R0 * std::log2(1.0 + K / std::pow(d + h, gamma)); }
  double at(Position p) const { return (*this)(distance(p, antenna)); }
};

/// Buffer transmitted when moving in a straight line from q0 to q1 at unit
/// speed.
double transmitted(Position q0, Position q1, const RadialRate& c, double rel_tol = 1e-8);
/// Same for an arbitrary radial law C(distance to `antenna`).
double transmitted(Position q0, Position q1, Position antenna, const std::function<double(double)>& rate,
                   double rel_tol = 1e-8);
/// Sum of `transmitted` over consecutive polyline vertices.
double transmitted_along(std::span<const Position> path, const RadialRate& c, double rel_tol = 1e-8);
double path_length(std::span<const Position> path);

enum class PlanCase { Small, Large, Intermediate };

struct PlanResult {
  PlanCase kind = PlanCase::Small;
  double time = 0.0;     ///< minimal time at unit speed, including any wait
  double heading = 0.0;  ///< initial heading, rad
  double wait = 0.0;     ///< time spent at the antenna (large case)
  std::vector<Position> path;  ///< vertices from p0 to the goal
};

struct PlannerSettings {
  int waypoints = 8;  ///< free interior vertices of the intermediate-case polyline
  numopt::OptimizerSettings optimizer{.function_tolerance = 1e-9,
                                      .x_tolerance = 0.0,
                                      .max_iterations = 3000,
                                      .max_evaluations = 6000,
                                      .lower = {},
                                      .upper = {}};
  double quadrature_tolerance = 1e-8;
};

/// Time-optimal path from p0 with buffer b0 to `goal` at unit speed under the
/// radial rate `c`. Small buffers go straight to the goal, large ones via the
/// antenna with a wait there. In between, the path is a polyline whose
/// vertices lie on segments joining the base p0-goal to the antenna, with
/// lengths minimized by Nelder-Mead subject to transmitting b0.
/// Throws ConfigError for b0 < 0.
PlanResult plan_time_optimal(Position p0, double b0, Position goal, const RadialRate& c,
                             const PlannerSettings& settings = {});

/// SNR model K / (|p - antenna| + h)^gamma with per-parameter known flags.
struct SnrParams {
  Position antenna;
  double K = 1e4;
  double h = 1.0;
  double gamma = 2.0;
  bool antenna_known = false;
  bool K_known = true;
  bool h_known = false;
  bool gamma_known = true;

  double snr(Position p) const { return K / std::pow(distance(p, antenna) + h, gamma); }
  RadialRate rate(double R0) const { return {antenna, K, h, gamma, R0}; }
  bool all_known() const { return antenna_known && K_known && h_known && gamma_known; }
};

/// Exact parameters of the scenario's single antenna, all marked known.
SnrParams true_params(const Scenario& s);

struct FitSettings {
  /// Bounds are filled in by fit_snr.
  numopt::OptimizerSettings optimizer{.function_tolerance = 0.1,
                                      .x_tolerance = 1e-4,
                                      .max_iterations = 5000,
                                      .max_evaluations = 10000,
                                      .lower = {},
                                      .upper = {}};
  double h_max = 100.0;
};

struct FitResult {
  SnrParams params;
  double loss = 0.0;  ///< mean squared SNR error at `params`
  bool ok = true;     ///< false when the optimizer failed and `prev` was kept
};

/// Mean squared SNR error of `params` over the stored (position, SNR) pairs.
double snr_loss(const llr::SampleStore& store, const SnrParams& params);

/// Nonlinear least-squares fit of the unknown parameters, started from
/// `prev`. The antenna is bounded to `domain`, h to (0, h_max].
FitResult fit_snr(const llr::SampleStore& store, const SnrParams& prev, const Box& domain,
                  const FitSettings& settings = {});

/// Closed-loop command from the time-optimal plan at the current state:
/// the plan's initial heading at full speed, slowing only to stop exactly on
/// the antenna or the goal. After the buffer is empty, heads for the goal.
Action closed_loop_command(const RobotState& x, const SnrParams& params, double R0, Position goal, double max_velocity,
                           double sample_period, const PlannerSettings& settings = {});
double closed_loop_heading(const RobotState& x, const SnrParams& params, double R0, Position goal,
                           const PlannerSettings& settings = {});

struct Candidate {
  Position position;
  std::size_t action = 0;  ///< index into the scenario action set
};

/// Positions reachable in one step, one per distinct position, in action
/// order.
std::vector<Candidate> reachable_set(const RobotState& x, const Scenario& s);

struct ExplorationScores {
  std::vector<double> d_inf;  ///< informativeness
  std::vector<double> d_ctl;  ///< angular deviation from the planned heading, [0, pi]
};

/// Candidates equal to the current position get d_ctl = pi.
ExplorationScores exploration_scores(std::span<const Candidate> candidates, Position current,
                                     const llr::SampleStore& store, const SnrParams& params, double heading);

/// Index maximizing d_inf / max(d_ctl, angle_floor); first wins ties.
std::size_t choose_next(const ExplorationScores& scores, double angle_floor = 1e-3);

enum class Mode { ModelBased, Learning };

struct PnConfig {
  Mode mode = Mode::Learning;
  /// Move along the planned heading instead of the exploration rule.
  bool exploit_only = false;
  /// Initial estimate; K and gamma known, antenna (0, 0) and h = 5 unknown.
  SnrParams initial{.antenna = {0.0, 0.0}, .K = 1e4, .h = 5.0, .gamma = 2.0};
  FitSettings fit;
  PlannerSettings planner;
  double angle_floor = 1e-3;
  int max_steps = 0;  ///< 0 uses the scenario limit
};

/// Default learning configuration for a scenario: the true K and gamma are
/// known, the antenna and h start at (0, 0) and 5.
PnConfig learning_config(const Scenario& s);

/// Runs one navigation episode. The log counts every step until the robot is
/// at the goal with an empty buffer.
EpisodeLog run_pn_episode(const Scenario& s, const PnConfig& cfg, std::uint64_t seed);

/// Straight-line legs to the goal after the buffer is empty. Shared with the
/// gradient baseline.
void drive_to_goal(const Scenario& s, RobotState& x, EpisodeLog& log, Rng& fading, int max_steps);

}  // namespace txnav::pn
