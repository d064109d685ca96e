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

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "txnav/rng.hpp"

namespace txnav {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
/// Bearing of `to` seen from `from`, in [0, 2pi).
double bearing(Vec2 from, Vec2 to);
/// Wraps an angle into [0, 2pi).
double wrap_angle(double a);
/// Shortest arc between two angles, in [0, pi].
double angular_distance(double a, double b);

using Position = Vec2;

struct RobotState {
  Position position;
  std::vector<double> extra;  ///< additional motion states, empty for first-order robots
  double buffer = 0.0;        ///< Mbit
};

struct Action {
  double velocity = 0.0;  ///< m/s
  double heading = 0.0;   ///< rad, [0, 2pi)
};

struct Box {
  double x_lo = 0.0, x_hi = 0.0;
  double y_lo = 0.0, y_hi = 0.0;

  Position clamp(Position p) const;
  bool contains(Position p) const {
    return p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi;
  }
};

enum class Orientation { Horizontal, Vertical };

/// Axis-aligned rectangular obstacle. `length` runs along x for horizontal
/// obstacles and along y for vertical ones. Membership tests use the
/// enlarged rectangle.
struct Obstacle {
  Position center;
  double length = 0.0;
  double width = 0.0;
  Orientation orientation = Orientation::Horizontal;
  double enlarged_length = 0.0;
  double enlarged_width = 0.0;

  /// Closed enlarged rectangle.
  Box enlarged_box() const;
  bool contains(Position p) const { return enlarged_box().contains(p); }
};

/// Radial path-loss antenna: S(p) = K / (|p - p_ant| + h)^gamma.
struct Antenna {
  Position position;
  double K = 1e4;
  double h = 1.0;
  double gamma = 2.0;
  double R0 = 1.0;

  double snr(Position p) const { return K / std::pow(distance(p, position) + h, gamma); }
  /// Rate at distance d with fading factor z.
  double rate_at_distance(double d, double z = 1.0) const {
    return R0 * std::log2(1.0 + z * K / std::pow(d + h, gamma));
  }
};

struct ParametricRate {
  std::vector<Antenna> antennas;
};

/// Measured SNR table on a rectangular lattice, bilinearly interpolated.
/// Rate = R0 * bandwidth * log2(1 + z * SNR).
struct TabulatedSnr {
  std::vector<double> xs;   ///< strictly increasing
  std::vector<double> ys;   ///< strictly increasing
  std::vector<double> snr;  ///< linear SNR, row-major: snr[iy * xs.size() + ix]
  double R0 = 1.0;
  double bandwidth = 1.0;

  /// Queries outside the table clamp to the nearest edge cell.
  double interpolate(Position p) const;
};

using RateModel = std::variant<ParametricRate, TabulatedSnr>;

struct FadingModel {
  bool enabled = false;
  double rice_v = 0.0;
  double norm_ez = 1.0;  ///< E_z, mean of the unnormalized Rice variable
};

/// Builds an enabled fading model with E_z computed for `rice_v`.
FadingModel make_fading(double rice_v);

enum class Dynamics { Integrator, Unicycle };

struct Scenario {
  std::string name;
  Box domain;
  double sample_period = 1.0;
  Dynamics dynamics = Dynamics::Unicycle;
  std::vector<Action> actions;
  RateModel rate;
  FadingModel fading;
  std::vector<Obstacle> obstacles;
  double obstacle_penalty = 100.0;
  double buffer_max = 0.0;
  RobotState initial;
  std::optional<Position> goal;
  int max_steps = 1000;
  std::optional<double> rate_max;  ///< known upper rate bound, if any
  std::optional<double> rate_min;  ///< known lower rate bound, if any

  double max_velocity() const;
};

/// Throws ConfigError describing every violated field.
void validate(const Scenario& s);

/// Index of `a` in the scenario's action set, if present.
std::optional<std::size_t> action_index(const Scenario& s, const Action& a);

/// One motion update without the action-set check. Saturates to the domain.
Position apply_motion(Position p, const Action& a, const Scenario& s);

/// Motion update for an action from U. The buffer is carried over unchanged.
RobotState motion_step(const RobotState& state, const Action& action, const Scenario& s);

/// Rate (Mbit/s) at `p` for fading factor `z` (1 when fading is off).
/// Multi-antenna models sum per-antenna rates.
double sample_rate(const RateModel& model, Position p, double z = 1.0);
inline double sample_rate(const Scenario& s, Position p, double z = 1.0) {
  return sample_rate(s.rate, p, z);
}

/// Faded SNR z * S(p). Requires a parametric model with one antenna.
double measure_snr(const Scenario& s, Position p, double z = 1.0);

/// Draws the multiplicative fading factor; 1 when fading is disabled.
double sample_fading(const FadingModel& f, Rng& rng);

/// Mean of the Rice distribution with noncentrality v and unit scale, by
/// adaptive quadrature of its density.
double compute_ez(double v);

/// max(0, b - T_s * r)
inline double buffer_step(double buffer, double rate, double sample_period) {
  return std::max(0.0, buffer - sample_period * rate);
}

bool in_obstacle(Position p, std::span<const Obstacle> obstacles);
inline bool in_obstacle(Position p, const Scenario& s) { return in_obstacle(p, s.obstacles); }

/// Builds the action set {v at k * 2pi / n, k < n} plus an optional stop.
std::vector<Action> heading_actions(double velocity, int n_headings, bool with_stop);

/// Upper and lower bounds of the fading-free rate over the domain, from a
/// dense lattice scan plus antenna positions.
struct RateBounds {
  double lo = 0.0;
  double hi = 0.0;
};
RateBounds scan_rate_bounds(const Scenario& s, int lattice = 401);

}  // namespace txnav
