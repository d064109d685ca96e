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

#include "txnav/pt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "txnav/error.hpp"

namespace txnav::pt {

namespace {

// Bellman backups for a fixed list of grid points under a fixed rate
// function. Full and local DP share this table, so the same inputs produce
// bit-identical parameters on both paths.
class TransitionTable {
 public:
  TransitionTable(const grid::ValueGrid& g, const grid::Subgrid& sub, const Scenario& s, const RateFn& rate,
                  std::span<const Obstacle> obstacles) {
    const std::size_t d = g.dims();
    const std::size_t n_actions = s.actions.size();
    n_actions_ = n_actions;
    const std::size_t nx = g.axis(0).size();
    std::vector<double> rate_cache(nx * g.axis(1).size(), std::numeric_limits<double>::quiet_NaN());
    std::vector<double> x(d), next(d);
    std::array<std::size_t, grid::kMaxDims> idx{};

    g.for_each(sub, [&](std::size_t f) {
      points_.push_back(f);
      g.point(f, x);
      g.unflat(f, std::span<std::size_t>(idx.data(), d));
      double& r = rate_cache[idx[1] * nx + idx[0]];
      const Position p{x[0], x[1]};
      if (std::isnan(r)) {
        r = rate(p);
        if (!std::isfinite(r)) throw Error(ErrorCode::ModelError, "dp: non-finite rate estimate");
      }
      const double b = x[d - 1];
      const double b_next = buffer_step(b, r, s.sample_period);
      for (const Action& a : s.actions) {
        const Position pn = apply_motion(p, a, s);
        next = x;
        next[0] = pn.x;
        next[1] = pn.y;
        next[d - 1] = b_next;
        rewards_.push_back(reward(b, pn, obstacles, s.obstacle_penalty));
        const grid::Weights w = g.weights(next);
        begin_.push_back(static_cast<std::uint32_t>(index_.size()));
        count_.push_back(static_cast<std::uint8_t>(w.count));
        for (std::size_t k = 0; k < w.count; ++k) {
          index_.push_back(static_cast<std::uint32_t>(w.index[k]));
          weight_.push_back(w.weight[k]);
        }
      }
    });
  }

  // out[i] = max_u [rho + V(next; old)] for every table point.
  void backup(std::span<const double> old, std::span<double> out) const {
    for (std::size_t j = 0; j < points_.size(); ++j) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < n_actions_; ++a) {
        const std::size_t e = j * n_actions_ + a;
        double v = 0.0;
        const std::uint32_t b = begin_[e];
        for (std::uint32_t k = 0; k < count_[e]; ++k) v += weight_[b + k] * old[index_[b + k]];
        const double q = rewards_[e] + v;
        if (q > best) best = q;
      }
      out[points_[j]] = best;
    }
  }

 private:
  std::size_t n_actions_ = 0;
  std::vector<std::size_t> points_;
  std::vector<double> rewards_;
  std::vector<std::uint32_t> begin_;
  std::vector<std::uint8_t> count_;
  std::vector<std::uint32_t> index_;
  std::vector<double> weight_;
};

double rate_bound_max(const Scenario& s, const DpConfig& cfg) {
  if (cfg.rate_max) return *cfg.rate_max;
  if (s.rate_max) return *s.rate_max;
  return scan_rate_bounds(s).hi;
}

std::vector<Obstacle> sensed(const grid::ValueGrid& g, const grid::Subgrid& sub, const Scenario& s) {
  const double reach = s.sample_period * s.max_velocity();
  const Box region{g.axis(0)[sub.lo[0]] - reach, g.axis(0)[sub.hi[0]] + reach, g.axis(1)[sub.lo[1]] - reach,
                   g.axis(1)[sub.hi[1]] + reach};
  std::vector<Obstacle> out;
  for (const Obstacle& o : s.obstacles) {
    const Box b = o.enlarged_box();
    if (b.x_lo <= region.x_hi && b.x_hi >= region.x_lo && b.y_lo <= region.y_hi && b.y_hi >= region.y_lo)
      out.push_back(o);
  }
  return out;
}

}  // namespace

double reward(double buffer, Position next, std::span<const Obstacle> obstacles, double penalty) {
  if (in_obstacle(next, obstacles)) return -penalty;
  return buffer > 0.0 ? -1.0 : 0.0;
}

double reward(const RobotState& state, const RobotState& next, const Scenario& s) {
  return reward(state.buffer, next.position, s.obstacles, s.obstacle_penalty);
}

std::vector<double> optimistic_init(const grid::ValueGrid& g, const Scenario& s, const DpConfig& cfg) {
  std::vector<double> theta(g.size(), 0.0);
  const std::optional<double> rmax = cfg.rate_max ? cfg.rate_max : s.rate_max;
  if (!rmax) return theta;
  const double scale = cfg.per_step_init ? s.sample_period * *rmax : *rmax;
  std::vector<double> x(g.dims());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.point(i, x);
    theta[i] = -x.back() / scale;
  }
  return theta;
}

grid::ValueGrid make_grid(const Scenario& s, std::span<const std::size_t> points) {
  const std::size_t d = 3 + s.initial.extra.size();
  if (points.size() != d) throw config_error("make_grid: expected one point count per state dimension");
  if (!s.initial.extra.empty()) throw config_error("make_grid: extra motion states need explicit axis ranges");
  std::vector<std::vector<double>> axes;
  axes.push_back(grid::ValueGrid::linspace(s.domain.x_lo, s.domain.x_hi, points[0]));
  axes.push_back(grid::ValueGrid::linspace(s.domain.y_lo, s.domain.y_hi, points[1]));
  axes.push_back(grid::ValueGrid::linspace(0.0, s.buffer_max, points[2]));
  return grid::ValueGrid(std::move(axes));
}

DpResult dp_full(const grid::ValueGrid& g, const Scenario& s, const RateFn& rate, const DpConfig& cfg,
                 std::vector<double> theta0) {
  if (theta0.empty()) theta0.assign(g.size(), 0.0);
  if (theta0.size() != g.size()) throw config_error("dp_full: theta0 size mismatch");
  int cap = cfg.max_iterations;
  if (cap <= 0) {
    const std::optional<double> rmin = cfg.rate_min ? cfg.rate_min : s.rate_min;
    cap = rmin && *rmin > 0.0 ? 10 * static_cast<int>(std::ceil(s.buffer_max / (s.sample_period * *rmin))) : 2000;
  }
  const TransitionTable table(g, g.full(), s, rate, s.obstacles);
  DpResult res;
  res.theta = std::move(theta0);
  std::vector<double> next(res.theta.size());
  while (res.iterations < cap) {
    table.backup(res.theta, next);
    ++res.iterations;
    double diff = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) diff = std::max(diff, std::abs(next[i] - res.theta[i]));
    res.theta.swap(next);
    res.residual = diff;
    if (diff <= cfg.tolerance) {
      res.converged = true;
      break;
    }
  }
  return res;
}

void dp_sweep_local(grid::ValueGrid& g, const grid::Subgrid& sub, const Scenario& s, const RateFn& rate, int sweeps,
                    std::span<const Obstacle> obstacles) {
  if (sweeps <= 0) return;
  const TransitionTable table(g, sub, s, rate, obstacles);
  std::vector<double> cur(g.theta().begin(), g.theta().end());
  std::vector<double> next = cur;
  for (int l = 0; l < sweeps; ++l) {
    table.backup(cur, next);
    cur = next;
  }
  g.set_theta(std::move(cur));
}

std::vector<double> state_vector(const RobotState& x) {
  std::vector<double> v{x.position.x, x.position.y};
  v.insert(v.end(), x.extra.begin(), x.extra.end());
  v.push_back(x.buffer);
  return v;
}

std::size_t greedy_action(const grid::ValueGrid& g, std::span<const double> theta, const RobotState& x, double rate,
                          const Scenario& s, std::span<const Obstacle> obstacles) {
  std::vector<double> next = state_vector(x);
  const double b_next = buffer_step(x.buffer, rate, s.sample_period);
  std::size_t best_i = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.actions.size(); ++i) {
    const Position pn = apply_motion(x.position, s.actions[i], s);
    next[0] = pn.x;
    next[1] = pn.y;
    next.back() = b_next;
    const double q = reward(x.buffer, pn, obstacles, s.obstacle_penalty) + grid::ValueGrid::apply(g.weights(next), theta);
    if (q > best) {
      best = q;
      best_i = i;
    }
  }
  return best_i;
}

grid::ValueGrid solve_model_based(const Scenario& s, const PtConfig& cfg) {
  grid::ValueGrid g = make_grid(s, cfg.grid_points);
  const RateModel& model = s.rate;
  DpResult res = dp_full(g, s, [&model](Position p) { return sample_rate(model, p); }, cfg.dp);
  g.set_theta(std::move(res.theta));
  return g;
}

EpisodeLog run_pt_episode(const Scenario& s, const PtConfig& cfg, std::uint64_t seed, const grid::ValueGrid* model) {
  EpisodeLog log;
  log.seed = seed;
  Rng fading = make_stream(seed, Stream::Fading);
  const int max_steps = cfg.max_steps > 0 ? cfg.max_steps : s.max_steps;

  std::optional<grid::ValueGrid> own;
  const grid::ValueGrid* g = model;
  grid::ValueGrid* learner = nullptr;
  if (cfg.mode == Mode::ModelBased) {
    if (!g) {
      own.emplace(solve_model_based(s, cfg));
      g = &*own;
    }
  } else {
    own.emplace(make_grid(s, cfg.grid_points));
    if (cfg.optimistic) {
      DpConfig dp = cfg.dp;
      dp.rate_max = rate_bound_max(s, cfg.dp);
      own->set_theta(optimistic_init(*own, s, dp));
    }
    g = learner = &*own;
  }

  llr::SampleStore store(cfg.llr.dedupe_tolerance);
  RobotState x = s.initial;
  for (int k = 0; x.buffer > 0.0; ++k) {
    if (k >= max_steps) {
      log.capped = true;
      break;
    }
    const double z = sample_fading(s.fading, fading);
    const double r = sample_rate(s, x.position, z);
    std::size_t a = 0;
    if (learner) {
      store.add(x.position, r);
      const grid::Subgrid sub = learner->select_subgrid(state_vector(x), static_cast<std::size_t>(cfg.dp.radius));
      const std::vector<Obstacle> visible = cfg.sensed_obstacles ? sensed(*learner, sub, s) : s.obstacles;
      auto estimate = [&](Position q) { return llr::estimate(store, q, cfg.llr); };
      dp_sweep_local(*learner, sub, s, estimate, cfg.dp.sweeps, visible);
      a = greedy_action(*learner, learner->theta(), x, r, s, visible);
    } else {
      a = greedy_action(*g, g->theta(), x, r, s, s.obstacles);
    }
    const Action& u = s.actions[a];
    RobotState next = x;
    next.position = apply_motion(x.position, u, s);
    next.buffer = buffer_step(x.buffer, r, s.sample_period);
    const double rho = reward(x, next, s);
    const bool hit = in_obstacle(next.position, s);
    log.collided = log.collided || hit;
    log.rows.push_back({k, x.position, x.buffer, r, u, rho, store.size(), hit});
    x = std::move(next);
  }
  log.emptied = x.buffer <= 0.0;
  log.final_state = x;
  return log;
}

}  // namespace txnav::pt
