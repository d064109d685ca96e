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

#include "txnav/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "txnav/error.hpp"
#include "txnav/numopt.hpp"

namespace txnav {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kActionMatchTol = 1e-9;

// exp(-t) * I0(t) for t >= 0, without overflow for large t.
double scaled_bessel_i0(double t) {
  if (t < 500.0) return std::cyl_bessel_i(0.0, t) * std::exp(-t);
  const double u = 1.0 / (8.0 * t);
  const double series = 1.0 + u * (1.0 + u * (9.0 / 2.0 + u * (225.0 / 6.0 + u * (11025.0 / 24.0))));
  return series / std::sqrt(kTwoPi * t);
}

std::size_t cell_index(const std::vector<double>& axis, double v) {
  // index i such that axis[i] <= v < axis[i+1], limited to the last cell
  auto it = std::upper_bound(axis.begin(), axis.end(), v);
  std::size_t i = it == axis.begin() ? 0 : static_cast<std::size_t>(it - axis.begin()) - 1;
  return std::min(i, axis.size() - 2);
}

}  // namespace

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

double bearing(Vec2 from, Vec2 to) { return wrap_angle(std::atan2(to.y - from.y, to.x - from.x)); }

double angular_distance(double a, double b) {
  const double d = std::abs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, kTwoPi - d);
}

Position Box::clamp(Position p) const { return {std::clamp(p.x, x_lo, x_hi), std::clamp(p.y, y_lo, y_hi)}; }

Box Obstacle::enlarged_box() const {
  const double half_l = 0.5 * enlarged_length;
  const double half_w = 0.5 * enlarged_width;
  if (orientation == Orientation::Horizontal)
    return {center.x - half_l, center.x + half_l, center.y - half_w, center.y + half_w};
  return {center.x - half_w, center.x + half_w, center.y - half_l, center.y + half_l};
}

double TabulatedSnr::interpolate(Position p) const {
  const double x = std::clamp(p.x, xs.front(), xs.back());
  const double y = std::clamp(p.y, ys.front(), ys.back());
  const std::size_t ix = cell_index(xs, x);
  const std::size_t iy = cell_index(ys, y);
  const double tx = (x - xs[ix]) / (xs[ix + 1] - xs[ix]);
  const double ty = (y - ys[iy]) / (ys[iy + 1] - ys[iy]);
  const std::size_t nx = xs.size();
  const double s00 = snr[iy * nx + ix], s10 = snr[iy * nx + ix + 1];
  const double s01 = snr[(iy + 1) * nx + ix], s11 = snr[(iy + 1) * nx + ix + 1];
  return (1 - ty) * ((1 - tx) * s00 + tx * s10) + ty * ((1 - tx) * s01 + tx * s11);
}

FadingModel make_fading(double rice_v) { return {true, rice_v, compute_ez(rice_v)}; }

double Scenario::max_velocity() const {
  double v = 0.0;
  for (const Action& a : actions) v = std::max(v, a.velocity);
  return v;
}

void validate(const Scenario& s) {
  std::ostringstream err;
  if (!(s.domain.x_lo < s.domain.x_hi) || !(s.domain.y_lo < s.domain.y_hi)) err << " domain bounds empty;";
  if (!(s.sample_period > 0.0)) err << " sample_period must be > 0;";
  if (!(s.obstacle_penalty > 0.0)) err << " obstacle_penalty must be > 0;";
  if (!(s.buffer_max >= 0.0)) err << " buffer_max must be >= 0;";
  if (s.initial.buffer < 0.0 || s.initial.buffer > s.buffer_max) err << " initial buffer outside [0, buffer_max];";
  if (!s.domain.contains(s.initial.position)) err << " initial position outside domain;";
  if (s.actions.empty()) err << " action set empty;";
  for (const Action& a : s.actions)
    if (!(a.velocity >= 0.0)) err << " negative action velocity;";
  if (s.max_steps < 1) err << " max_steps must be >= 1;";
  if (s.goal && !s.domain.contains(*s.goal)) err << " goal outside domain;";
  for (const Obstacle& o : s.obstacles)
    if (o.enlarged_length < o.length || o.enlarged_width < o.width) err << " obstacle enlargement below nominal size;";
  if (s.fading.enabled && (!(s.fading.rice_v >= 0.0) || !(s.fading.norm_ez > 0.0))) err << " invalid fading parameters;";
  if (const auto* pr = std::get_if<ParametricRate>(&s.rate)) {
    if (pr->antennas.empty()) err << " parametric rate needs at least one antenna;";
    for (const Antenna& a : pr->antennas)
      if (!(a.K > 0 && a.h > 0 && a.gamma > 0 && a.R0 > 0)) err << " antenna K, h, gamma, R0 must be > 0;";
  } else {
    const auto& t = std::get<TabulatedSnr>(s.rate);
    if (t.xs.size() < 2 || t.ys.size() < 2 || t.snr.size() != t.xs.size() * t.ys.size())
      err << " tabulated SNR grid malformed;";
    else {
      if (!std::is_sorted(t.xs.begin(), t.xs.end()) || !std::is_sorted(t.ys.begin(), t.ys.end()))
        err << " tabulated axes must increase;";
      if (t.xs.front() > s.domain.x_lo || t.xs.back() < s.domain.x_hi || t.ys.front() > s.domain.y_lo ||
          t.ys.back() < s.domain.y_hi)
        err << " tabulated SNR grid must cover the domain;";
      for (double v : t.snr)
        if (!(v >= 0.0)) err << " tabulated SNR values must be >= 0;";
    }
    if (!(t.R0 > 0.0 && t.bandwidth > 0.0)) err << " R0 and bandwidth must be > 0;";
  }
  const std::string msg = err.str();
  if (!msg.empty()) throw config_error("scenario '" + s.name + "':" + msg);
}

std::optional<std::size_t> action_index(const Scenario& s, const Action& a) {
  for (std::size_t i = 0; i < s.actions.size(); ++i) {
    const Action& u = s.actions[i];
    if (std::abs(u.velocity - a.velocity) > kActionMatchTol) continue;
    if (u.velocity == 0.0 || angular_distance(u.heading, a.heading) <= kActionMatchTol) return i;
  }
  return std::nullopt;
}

Position apply_motion(Position p, const Action& a, const Scenario& s) {
  // The unicycle update and the integrator update with u = v (cos h, sin h)
  // coincide for first-order robots.
  const double step = s.sample_period * a.velocity;
  return s.domain.clamp({p.x + step * std::cos(a.heading), p.y + step * std::sin(a.heading)});
}

RobotState motion_step(const RobotState& state, const Action& action, const Scenario& s) {
  if (!action_index(s, action))
    throw Error(ErrorCode::InvalidAction, "motion_step: action not in the scenario action set");
  RobotState next = state;
  next.position = apply_motion(state.position, action, s);
  return next;
}

double sample_rate(const RateModel& model, Position p, double z) {
  if (const auto* pr = std::get_if<ParametricRate>(&model)) {
    double r = 0.0;
    for (const Antenna& a : pr->antennas) r += a.R0 * std::log2(1.0 + z * a.snr(p));
    return r;
  }
  const auto& t = std::get<TabulatedSnr>(model);
  return t.R0 * t.bandwidth * std::log2(1.0 + z * t.interpolate(p));
}

double measure_snr(const Scenario& s, Position p, double z) {
  const auto* pr = std::get_if<ParametricRate>(&s.rate);
  if (!pr || pr->antennas.size() != 1)
    throw Error(ErrorCode::ModelError, "measure_snr: requires a parametric model with a single antenna");
  return z * pr->antennas.front().snr(p);
}

double sample_fading(const FadingModel& f, Rng& rng) {
  if (!f.enabled) return 1.0;
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double a = gauss(rng) + f.rice_v;
  const double b = gauss(rng);
  return std::hypot(a, b) / f.norm_ez;
}

double compute_ez(double v) {
  if (!(v >= 0.0)) throw config_error("compute_ez: v must be >= 0");
  // x * Rice(x; v, 1) = x^2 exp(-(x - v)^2 / 2) * [exp(-x v) I0(x v)]
  auto integrand = [v](double x) {
    const double d = x - v;
    return x * x * std::exp(-0.5 * d * d) * scaled_bessel_i0(x * v);
  };
  const double lo = std::max(0.0, v - 14.0);
  const double hi = v + 14.0;
  return numopt::integrate(integrand, lo, v, 1e-12) + numopt::integrate(integrand, v, hi, 1e-12);
}

bool in_obstacle(Position p, std::span<const Obstacle> obstacles) {
  return std::any_of(obstacles.begin(), obstacles.end(), [p](const Obstacle& o) { return o.contains(p); });
}

std::vector<Action> heading_actions(double velocity, int n_headings, bool with_stop) {
  std::vector<Action> out;
  for (int k = 0; k < n_headings; ++k) out.push_back({velocity, kTwoPi * k / n_headings});
  if (with_stop) out.push_back({0.0, 0.0});
  return out;
}

RateBounds scan_rate_bounds(const Scenario& s, int lattice) {
  RateBounds b{std::numeric_limits<double>::infinity(), 0.0};
  auto visit = [&](Position p) {
    const double r = sample_rate(s, s.domain.clamp(p));
    b.lo = std::min(b.lo, r);
    b.hi = std::max(b.hi, r);
  };
  for (int i = 0; i < lattice; ++i)
    for (int j = 0; j < lattice; ++j)
      visit({s.domain.x_lo + (s.domain.x_hi - s.domain.x_lo) * i / (lattice - 1),
             s.domain.y_lo + (s.domain.y_hi - s.domain.y_lo) * j / (lattice - 1)});
  if (const auto* pr = std::get_if<ParametricRate>(&s.rate))
    for (const Antenna& a : pr->antennas) visit(a.position);
  return b;
}

}  // namespace txnav
