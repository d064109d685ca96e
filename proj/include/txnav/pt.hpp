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
#include <optional>
#include <span>
#include <vector>

#include "txnav/episode.hpp"
#include "txnav/gridfn.hpp"
#include "txnav/llr.hpp"
#include "txnav/world.hpp"

/// Transmission problem: empty the buffer in minimum time with a free final
/// position, penalizing obstacle collisions.
namespace txnav::pt {

/// Stage reward: -o if the next position is inside an obstacle, else -1 while
/// the current buffer is nonzero, else 0.
double reward(double buffer, Position next, std::span<const Obstacle> obstacles, double penalty);
double reward(const RobotState& state, const RobotState& next, const Scenario& s);

struct DpConfig {
  int radius = 4;           ///< r_DP, grid points to each side of the subgrid center
  int sweeps = 10;          ///< l_DP, local backups per control step
  double tolerance = 1e-6;  ///< stop threshold on the max-norm change, full DP
  int max_iterations = 0;   ///< full DP cap; 0 picks 10 * ceil(bmax / (Ts * rate_min)) or 2000
  std::optional<double> rate_max;  ///< known maximal rate for optimistic initialization
  std::optional<double> rate_min;
  /// Initial values -b / (Ts * rate_max), the minimal step count, instead of
  /// the default -b / rate_max.
  bool per_step_init = false;
};

/// Initial parameters -b_i / rate_max per grid point (divided further by Ts
/// with per_step_init), or zero when no rate bound is known.
std::vector<double> optimistic_init(const grid::ValueGrid& g, const Scenario& s, const DpConfig& cfg);

/// Grid over (p1, p2, extra..., b) spanning the domain and [0, bmax].
/// `points` gives the per-dimension point count.
grid::ValueGrid make_grid(const Scenario& s, std::span<const std::size_t> points);

using RateFn = std::function<double(Position)>;

struct DpResult {
  std::vector<double> theta;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;  ///< max-norm change of the last iteration
};

/// Approximate value iteration over every grid point until the max-norm
/// change drops to the tolerance or the iteration cap is hit. Starts from
/// `theta0` (zeros when empty). Throws ModelError on a non-finite rate.
DpResult dp_full(const grid::ValueGrid& g, const Scenario& s, const RateFn& rate, const DpConfig& cfg,
                 std::vector<double> theta0 = {});

/// `sweeps` synchronous backups restricted to the subgrid; other parameters
/// are left untouched. `obstacles` are the obstacles known to the controller.
void dp_sweep_local(grid::ValueGrid& g, const grid::Subgrid& sub, const Scenario& s, const RateFn& rate, int sweeps,
                    std::span<const Obstacle> obstacles);
inline void dp_sweep_local(grid::ValueGrid& g, const grid::Subgrid& sub, const Scenario& s, const RateFn& rate,
                           int sweeps) {
  dp_sweep_local(g, sub, s, rate, sweeps, s.obstacles);
}

/// State vector (p1, p2, extra..., b) of a robot state.
std::vector<double> state_vector(const RobotState& x);

/// Index into the scenario's action set maximizing reward plus interpolated
/// next-state value for rate `rate`; the first maximizer wins ties.
std::size_t greedy_action(const grid::ValueGrid& g, std::span<const double> theta, const RobotState& x, double rate,
                          const Scenario& s, std::span<const Obstacle> obstacles);

enum class Mode { ModelBased, Learning };

struct PtConfig {
  Mode mode = Mode::Learning;
  DpConfig dp;
  llr::LlrConfig llr;
  std::vector<std::size_t> grid_points{31, 31, 31};
  /// Initialize with optimistic values from a known (or scanned) maximal rate.
  bool optimistic = true;
  /// Obstacles become known only when they reach into the region reachable
  /// from the current subgrid.
  bool sensed_obstacles = false;
  int max_steps = 0;  ///< 0 uses the scenario limit
};

/// Model-based solution: full DP with the fading-free rate from zero
/// parameters. Reusable across episodes on the same scenario.
grid::ValueGrid solve_model_based(const Scenario& s, const PtConfig& cfg);

/// Runs one transmission episode from the scenario's initial state. In
/// learning mode the rate is learned with LLR and local DP sweeps; in
/// model-based mode `model` (or a fresh solve) provides the value function.
EpisodeLog run_pt_episode(const Scenario& s, const PtConfig& cfg, std::uint64_t seed,
                          const grid::ValueGrid* model = nullptr);

}  // namespace txnav::pt
