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

#include "txnav/pn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <variant>

#include "txnav/error.hpp"

namespace txnav::pn {

namespace {

constexpr double kAtPoint = 1e-9;

std::vector<Position> ray_path(Position p0, Position goal, Position antenna, std::span<const double> lambda) {
  const std::size_t m = lambda.size();
  std::vector<Position> path;
  path.reserve(m + 2);
  path.push_back(p0);
  for (std::size_t j = 0; j < m; ++j) {
    const double t = static_cast<double>(j + 1) / static_cast<double>(m + 1);
    const Position base = p0 + (goal - p0) * t;
    path.push_back(base + (antenna - base) * lambda[j]);
  }
  path.push_back(goal);
  return path;
}

double first_heading(std::span<const Position> path) {
  for (std::size_t i = 1; i < path.size(); ++i)
    if (distance(path[i], path[0]) > kAtPoint) return bearing(path[0], path[i]);
  return 0.0;
}

// Smallest tau in [0, 1] with transmitted(blend(tau)) >= b0, where blend(1)
// is known to be feasible.
double minimal_blend(const std::function<double(double)>& sent, double b0) {
  const double g0 = sent(0.0) - b0;
  if (g0 >= 0.0) return 0.0;
  const auto g = [&](double tau) { return sent(tau) - b0; };
  return numopt::bisect_bracket(g, 0.0, 1.0, 1e-10).hi;
}

}  // namespace

double transmitted(Position q0, Position q1, const RadialRate& c, double rel_tol) {
  const double len = distance(q0, q1);
  if (len <= 0.0) return 0.0;
  const Vec2 d = q1 - q0;
  return len * numopt::integrate_01([&](double s) { return c.at(q0 + d * s); }, rel_tol);
}

double transmitted(Position q0, Position q1, Position antenna, const std::function<double(double)>& rate,
                   double rel_tol) {
  const double len = distance(q0, q1);
  if (len <= 0.0) return 0.0;
  const Vec2 d = q1 - q0;
  return len * numopt::integrate_01([&](double s) { return rate(distance(q0 + d * s, antenna)); }, rel_tol);
}

double transmitted_along(std::span<const Position> path, const RadialRate& c, double rel_tol) {
  double sum = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) sum += transmitted(path[i - 1], path[i], c, rel_tol);
  return sum;
}

double path_length(std::span<const Position> path) {
  double sum = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) sum += distance(path[i - 1], path[i]);
  return sum;
}

PlanResult plan_time_optimal(Position p0, double b0, Position goal, const RadialRate& c,
                             const PlannerSettings& settings) {
  if (!(b0 >= 0.0)) throw config_error("plan_time_optimal: buffer must be nonnegative");
  if (settings.waypoints < 1) throw config_error("plan_time_optimal: at least one waypoint required");
  const double tol = settings.quadrature_tolerance;
  const Position pa = c.antenna;
  PlanResult res;

  const double direct = transmitted(p0, goal, c, tol);
  if (b0 <= direct) {
    res.kind = PlanCase::Small;
    res.path = {p0, goal};
    res.time = distance(p0, goal);
    res.heading = first_heading(res.path);
    return res;
  }
  const double via = transmitted(p0, pa, c, tol) + transmitted(pa, goal, c, tol);
  if (b0 >= via) {
    res.kind = PlanCase::Large;
    res.path = {p0, pa, goal};
    res.wait = (b0 - via) / c(0.0);
    res.time = distance(p0, pa) + distance(pa, goal) + res.wait;
    res.heading = first_heading(res.path);
    return res;
  }

  res.kind = PlanCase::Intermediate;
  const std::size_t m = static_cast<std::size_t>(settings.waypoints);
  auto sent_at = [&](std::span<const double> lambda) {
    const std::vector<Position> path = ray_path(p0, goal, pa, lambda);
    return transmitted_along(path, c, tol);
  };

  // Feasible start: all vertices at the same fraction of the way to the antenna.
  std::vector<double> lam(m);
  const double tau0 = minimal_blend(
      [&](double tau) {
        std::fill(lam.begin(), lam.end(), tau);
        return sent_at(lam);
      },
      b0);
  std::vector<double> start(m, tau0);
  const std::vector<Position> start_path = ray_path(p0, goal, pa, start);
  const double start_len = path_length(start_path);

  // Exact penalty: the weight exceeds the marginal cost of extra buffer,
  // which is at most 1 / C over the triangle spanned by p0, goal and antenna.
  const double c_min = c(std::max(distance(p0, pa), distance(goal, pa)));
  const double w1 = 1.5 / std::max(c_min, 1e-12);
  const double w2 = w1 / std::max(b0, 1e-12);
  numopt::OptimizerSettings opt = settings.optimizer;
  opt.lower.assign(m, 0.0);
  opt.upper.assign(m, 1.0);
  const auto objective = [&](const std::vector<double>& l) {
    const std::vector<Position> path = ray_path(p0, goal, pa, l);
    const double deficit = std::max(0.0, b0 - transmitted_along(path, c, tol));
    return path_length(path) + w1 * deficit + w2 * deficit * deficit;
  };
  const numopt::OptimizerResult nm = numopt::nelder_mead(objective, start, opt);

  // Repair: move every vertex toward the antenna by the smallest common
  // fraction that restores feasibility.
  std::vector<double> mu = nm.x;
  if (sent_at(mu) < b0) {
    std::vector<double> trial(m);
    const double tau = minimal_blend(
        [&](double t) {
          for (std::size_t j = 0; j < m; ++j) trial[j] = mu[j] + t * (1.0 - mu[j]);
          return sent_at(trial);
        },
        b0);
    for (std::size_t j = 0; j < m; ++j) mu[j] = mu[j] + tau * (1.0 - mu[j]);
  }
  std::vector<Position> path = ray_path(p0, goal, pa, mu);
  double len = path_length(path);
  if (len > start_len) {
    path = start_path;
    len = start_len;
  }
  res.path = std::move(path);
  res.time = len;
  res.heading = first_heading(res.path);
  return res;
}

SnrParams true_params(const Scenario& s) {
  const auto* model = std::get_if<ParametricRate>(&s.rate);
  if (!model || model->antennas.size() != 1) throw config_error("navigation needs a single parametric antenna");
  const Antenna& a = model->antennas.front();
  return {.antenna = a.position,
          .K = a.K,
          .h = a.h,
          .gamma = a.gamma,
          .antenna_known = true,
          .K_known = true,
          .h_known = true,
          .gamma_known = true};
}

double snr_loss(const llr::SampleStore& store, const SnrParams& params) {
  if (store.empty()) return 0.0;
  double sum = 0.0;
  for (const llr::Sample& smp : store.samples()) {
    const double e = params.snr(smp.position) - smp.value;
    sum += e * e;
  }
  return sum / static_cast<double>(store.size());
}

FitResult fit_snr(const llr::SampleStore& store, const SnrParams& prev, const Box& domain,
                  const FitSettings& settings) {
  FitResult out{prev, snr_loss(store, prev), true};
  if (store.empty() || prev.all_known()) return out;

  std::vector<double> x, lo, hi;
  auto add = [&](double v, double l, double h) {
    lo.push_back(l);
    hi.push_back(h);
    x.push_back(std::clamp(v, l, h));
  };
  if (!prev.antenna_known) {
    add(prev.antenna.x, domain.x_lo, domain.x_hi);
    add(prev.antenna.y, domain.y_lo, domain.y_hi);
  }
  if (!prev.K_known) add(prev.K, 1e-6, 1e12);
  if (!prev.h_known) add(prev.h, 1e-6, settings.h_max);
  if (!prev.gamma_known) add(prev.gamma, 0.1, 10.0);

  const auto unpack = [&prev](const std::vector<double>& v) {
    SnrParams p = prev;
    std::size_t i = 0;
    if (!p.antenna_known) {
      p.antenna = {v[i], v[i + 1]};
      i += 2;
    }
    if (!p.K_known) p.K = v[i++];
    if (!p.h_known) p.h = v[i++];
    if (!p.gamma_known) p.gamma = v[i++];
    return p;
  };

  numopt::OptimizerSettings opt = settings.optimizer;
  opt.lower = lo;
  opt.upper = hi;
  try {
    const numopt::OptimizerResult r =
        numopt::nelder_mead([&](const std::vector<double>& v) { return snr_loss(store, unpack(v)); }, x, opt);
    if (!std::isfinite(r.value)) {
      out.ok = false;
      return out;
    }
    out.params = unpack(r.x);
    out.loss = r.value;
  } catch (const Error&) {
    out.ok = false;
  }
  return out;
}

Action closed_loop_command(const RobotState& x, const SnrParams& params, double R0, Position goal, double max_velocity,
                           double sample_period, const PlannerSettings& settings) {
  const double reach = max_velocity * sample_period;
  const auto toward = [&](Position target) -> Action {
    const double d = distance(x.position, target);
    if (d <= kAtPoint) return {0.0, 0.0};
    return {std::min(max_velocity, d / sample_period), bearing(x.position, target)};
  };
  if (x.buffer <= 0.0) return toward(goal);

  // Buffer per unit path length at full speed.
  const RadialRate c = params.rate(R0 / max_velocity);
  const PlanResult plan = plan_time_optimal(x.position, x.buffer, goal, c, settings);
  switch (plan.kind) {
    case PlanCase::Small:
      return toward(goal);
    case PlanCase::Large:
      return toward(params.antenna);
    case PlanCase::Intermediate:
      break;
  }
  const double len = path_length(plan.path);
  return {len < reach ? len / sample_period : max_velocity, plan.heading};
}

double closed_loop_heading(const RobotState& x, const SnrParams& params, double R0, Position goal,
                           const PlannerSettings& settings) {
  if (x.buffer <= 0.0) return distance(x.position, goal) > kAtPoint ? bearing(x.position, goal) : 0.0;
  return plan_time_optimal(x.position, x.buffer, goal, params.rate(R0), settings).heading;
}

std::vector<Candidate> reachable_set(const RobotState& x, const Scenario& s) {
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < s.actions.size(); ++i) {
    const Position p = apply_motion(x.position, s.actions[i], s);
    const bool seen =
        std::any_of(out.begin(), out.end(), [&](const Candidate& c) { return distance(c.position, p) <= kAtPoint; });
    if (!seen) out.push_back({p, i});
  }
  return out;
}

ExplorationScores exploration_scores(std::span<const Candidate> candidates, Position current,
                                     const llr::SampleStore& store, const SnrParams& params, double heading) {
  ExplorationScores out;
  out.d_inf.reserve(candidates.size());
  out.d_ctl.reserve(candidates.size());
  for (const Candidate& c : candidates) {
    const double predicted = params.snr(c.position);
    double d_inf = std::numeric_limits<double>::infinity();
    for (const llr::Sample& smp : store.samples())
      d_inf = std::min(d_inf, distance(smp.position, c.position) * std::abs(smp.value - predicted));
    if (store.empty()) d_inf = 0.0;
    out.d_inf.push_back(d_inf);
    const bool stays = distance(c.position, current) <= kAtPoint;
    out.d_ctl.push_back(stays ? std::numbers::pi : angular_distance(heading, bearing(current, c.position)));
  }
  return out;
}

std::size_t choose_next(const ExplorationScores& scores, double angle_floor) {
  if (scores.d_inf.empty()) throw config_error("choose_next: no candidates");
  std::size_t best = 0;
  double best_ratio = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scores.d_inf.size(); ++i) {
    const double ratio = scores.d_inf[i] / std::max(scores.d_ctl[i], angle_floor);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = i;
    }
  }
  return best;
}

PnConfig learning_config(const Scenario& s) {
  const SnrParams truth = true_params(s);
  PnConfig cfg;
  cfg.initial.K = truth.K;
  cfg.initial.gamma = truth.gamma;
  return cfg;
}

void drive_to_goal(const Scenario& s, RobotState& x, EpisodeLog& log, Rng& fading, int max_steps) {
  const Position goal = *s.goal;
  const double v = s.max_velocity();
  while (distance(x.position, goal) > kAtPoint) {
    if (log.steps() >= max_steps) {
      log.capped = true;
      return;
    }
    const double z = sample_fading(s.fading, fading);
    const double r = sample_rate(s, x.position, z);
    const double d = distance(x.position, goal);
    const Action u{std::min(v, d / s.sample_period), bearing(x.position, goal)};
    RobotState next = x;
    next.position = d <= v * s.sample_period ? goal : apply_motion(x.position, u, s);
    next.buffer = buffer_step(x.buffer, r, s.sample_period);
    log.rows.push_back({log.steps(), x.position, x.buffer, r, u, -1.0, 0, false});
    x = std::move(next);
  }
}

EpisodeLog run_pn_episode(const Scenario& s, const PnConfig& cfg, std::uint64_t seed) {
  if (!s.goal) throw config_error("navigation scenario needs a goal");
  const SnrParams truth = true_params(s);
  const double R0 = std::get<ParametricRate>(s.rate).antennas.front().R0;
  const Position goal = *s.goal;
  const double v = s.max_velocity();
  const int max_steps = cfg.max_steps > 0 ? cfg.max_steps : s.max_steps;

  EpisodeLog log;
  log.seed = seed;
  Rng fading = make_stream(seed, Stream::Fading);
  llr::SampleStore store;
  SnrParams w = cfg.mode == Mode::ModelBased ? truth : cfg.initial;
  RobotState x = s.initial;

  while (x.buffer > 0.0) {
    if (log.steps() >= max_steps) {
      log.capped = true;
      break;
    }
    const double z = sample_fading(s.fading, fading);
    const double r = sample_rate(s, x.position, z);
    if (cfg.mode == Mode::Learning) {
      store.add(x.position, measure_snr(s, x.position, z));
      w = fit_snr(store, w, s.domain, cfg.fit).params;
    }
    const Action cmd = closed_loop_command(x, w, R0, goal, v, s.sample_period, cfg.planner);
    Action u = cmd;
    Position p_next;
    if (cfg.mode == Mode::Learning && !cfg.exploit_only) {
      const std::vector<Candidate> cands = reachable_set(x, s);
      const ExplorationScores sc = exploration_scores(cands, x.position, store, w, cmd.heading);
      const Candidate& pick = cands[choose_next(sc, cfg.angle_floor)];
      u = s.actions[pick.action];
      p_next = pick.position;
    } else {
      p_next = apply_motion(x.position, u, s);
      const double d_goal = distance(x.position, goal);
      const double d_ant = distance(x.position, w.antenna);
      // Land exactly on a target reached within this step.
      if (u.velocity > 0.0 && std::abs(u.velocity * s.sample_period - d_goal) <= 1e-9) p_next = goal;
      if (u.velocity > 0.0 && std::abs(u.velocity * s.sample_period - d_ant) <= 1e-9) p_next = w.antenna;
    }
    RobotState next = x;
    next.position = p_next;
    next.buffer = buffer_step(x.buffer, r, s.sample_period);
    log.rows.push_back({log.steps(), x.position, x.buffer, r, u, -1.0, store.size(), false});
    x = std::move(next);
  }
  log.emptied = x.buffer <= 0.0;
  if (log.emptied) drive_to_goal(s, x, log, fading, max_steps);
  log.reached_goal = log.emptied && distance(x.position, goal) <= kAtPoint;
  log.final_state = x;
  return log;
}

}  // namespace txnav::pn
