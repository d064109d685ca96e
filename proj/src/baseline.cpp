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

#include "txnav/baseline.hpp"

#include <cmath>
#include <numbers>

#include "txnav/error.hpp"
#include "txnav/pn.hpp"

namespace txnav::baseline {

Action gradient_action(const RobotState& x, const llr::SampleStore& store, const Scenario& s, int k,
                       const GradientConfig& cfg) {
  const double v = s.max_velocity();
  const std::optional<Vec2> g = llr::estimate_gradient(store, x.position, cfg.llr);
  if (g && (g->x != 0.0 || g->y != 0.0)) return {v, std::atan2(g->y, g->x)};
  return {v, static_cast<double>(k % 4) * (std::numbers::pi / 2.0)};
}

EpisodeLog run_gradient_episode(const Scenario& s, const GradientConfig& cfg, std::uint64_t seed) {
  if (!s.obstacles.empty()) throw config_error("gradient baseline cannot avoid obstacles");
  if (cfg.llr.neighbors < 3) throw config_error("gradient baseline needs at least 3 neighbors");
  const int max_steps = cfg.max_steps > 0 ? cfg.max_steps : s.max_steps;

  EpisodeLog log;
  log.seed = seed;
  Rng fading = make_stream(seed, Stream::Fading);
  llr::SampleStore store(cfg.llr.dedupe_tolerance);
  RobotState x = s.initial;
  while (x.buffer > 0.0) {
    if (log.steps() >= max_steps) {
      log.capped = true;
      break;
    }
    const int k = log.steps();
    const double z = sample_fading(s.fading, fading);
    const double r = sample_rate(s, x.position, z);
    store.add(x.position, r);
    const Action u = gradient_action(x, store, s, k, cfg);
    RobotState next = x;
    next.position = apply_motion(x.position, u, s);
    next.buffer = buffer_step(x.buffer, r, s.sample_period);
    log.rows.push_back({k, x.position, x.buffer, r, u, -1.0, store.size(), false});
    x = std::move(next);
  }
  log.emptied = x.buffer <= 0.0;
  if (s.goal) {
    if (log.emptied) pn::drive_to_goal(s, x, log, fading, max_steps);
    log.reached_goal = log.emptied && distance(x.position, *s.goal) <= 1e-9;
  }
  log.final_state = x;
  return log;
}

}  // namespace txnav::baseline
