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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "txnav/baseline.hpp"
#include "txnav/error.hpp"
#include "txnav/scenario_io.hpp"

using namespace txnav;
using namespace txnav::baseline;

TEST_CASE("gradient action follows the fitted plane") {
  const Scenario s = builtin_scenario("pt-free");
  llr::SampleStore store;
  for (Position p : {Position{10, 10}, Position{14, 10}, Position{10, 14}})
    store.add(p, 2.0 * p.x + 3.0 * p.y + 1.0);
  const Action u = gradient_action(RobotState{{11, 11}, {}, 5.0}, store, s, 7);
  CHECK(u.velocity == s.max_velocity());
  CHECK(u.heading == doctest::Approx(std::atan2(3.0, 2.0)).epsilon(1e-12));
}

TEST_CASE("degenerate neighborhoods rotate the heading with the step") {
  const Scenario s = builtin_scenario("pt-free");
  llr::SampleStore store;
  for (double x : {10.0, 14.0, 18.0}) store.add({x, 10}, x);
  const RobotState at{{18, 10}, {}, 5.0};
  CHECK(gradient_action(at, store, s, 0).heading == 0.0);
  CHECK(gradient_action(at, store, s, 1).heading == doctest::Approx(std::numbers::pi / 2));
  CHECK(gradient_action(at, store, s, 2).heading == doctest::Approx(std::numbers::pi));
  CHECK(gradient_action(at, store, s, 4).heading == 0.0);
  CHECK(gradient_action(at, llr::SampleStore{}, s, 3).heading == doctest::Approx(1.5 * std::numbers::pi));
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(run_gradient_episode(builtin_scenario("pt-obstacles"), GradientConfig{}, 1), Error);
  GradientConfig two;
  two.llr.neighbors = 2;
  CHECK_THROWS_AS(run_gradient_episode(builtin_scenario("pt-free"), two, 1), Error);
}

TEST_CASE("starting at the rate peak empties a small buffer quickly") {
  Scenario s = builtin_scenario("pt-free");
  s.initial = {{100, 170}, {}, 60.0};
  const EpisodeLog log = run_gradient_episode(s, GradientConfig{}, 1);
  CHECK(log.emptied);
  // Bound from the rate one step away from the antenna.
  const double r4 = sample_rate(s, {104, 170});
  CHECK(log.steps() <= static_cast<int>(std::ceil(60.0 / (s.sample_period * r4))));
}

TEST_CASE("empty buffer on a navigation scenario goes straight to the goal") {
  Scenario s = builtin_scenario("pn-single");
  s.initial.buffer = 0.0;
  const EpisodeLog log = run_gradient_episode(s, GradientConfig{}, 1);
  const double d = distance(s.initial.position, *s.goal);
  CHECK(log.steps() == static_cast<int>(std::ceil(d / (s.sample_period * s.max_velocity()))));
  CHECK(log.reached_goal);
}

TEST_CASE("gradient episodes reach the goal and are deterministic") {
  const Scenario s = builtin_scenario("pn-single");
  const EpisodeLog a = run_gradient_episode(s, GradientConfig{}, 9);
  const EpisodeLog b = run_gradient_episode(s, GradientConfig{}, 9);
  CHECK(a.reached_goal);
  REQUIRE(a.steps() == b.steps());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].position == b.rows[i].position);
    CHECK(a.rows[i].action.heading == b.rows[i].action.heading);
  }
}
