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
#include <random>

#include "doctest.h"
#include "txnav/error.hpp"
#include "txnav/scenario_io.hpp"
#include "txnav/world.hpp"

using namespace txnav;

namespace {

// Mean of |(z' + v, z'')| with unit-variance Gaussians, closed form in
// modified Bessel functions.
double rice_mean_closed_form(double v) {
  const double x = v * v / 4.0;
  return std::sqrt(std::numbers::pi / 2.0) * std::exp(-x) *
         ((1.0 + 2.0 * x) * std::cyl_bessel_i(0.0, x) + 2.0 * x * std::cyl_bessel_i(1.0, x));
}

}  // namespace

TEST_CASE("angles") {
  CHECK(bearing({0, 0}, {1, 0}) == doctest::Approx(0.0));
  CHECK(bearing({0, 0}, {0, -1}) == doctest::Approx(1.5 * std::numbers::pi));
  CHECK(wrap_angle(-std::numbers::pi / 2) == doctest::Approx(1.5 * std::numbers::pi));
  CHECK(angular_distance(0.0, 7 * std::numbers::pi / 4) == doctest::Approx(std::numbers::pi / 4));
  CHECK(angular_distance(0.1, 0.1 + std::numbers::pi) == doctest::Approx(std::numbers::pi));
}

TEST_CASE("motion saturates at the domain bounds") {
  Scenario s = builtin_scenario("pt-obstacles");
  const Position p = apply_motion({199, 100}, {1.0, 0.0}, s);
  CHECK(p.x == 200.0);
  CHECK(p.y == doctest::Approx(100.0));
  const Position q = apply_motion({100, 100}, {1.0, std::numbers::pi / 2}, s);
  CHECK(q.x == doctest::Approx(100.0));
  CHECK(q.y == doctest::Approx(104.0));
}

TEST_CASE("motion_step rejects actions outside the action set") {
  Scenario s = builtin_scenario("pt-obstacles");
  RobotState x{{10, 10}, {}, 5.0};
  CHECK_THROWS_AS(motion_step(x, {0.5, 0.0}, s), Error);
  try {
    motion_step(x, {0.5, 0.0}, s);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidAction);
  }
  const RobotState y = motion_step(x, s.actions.front(), s);
  CHECK(y.buffer == 5.0);
}

TEST_CASE("buffer update floors at zero") {
  CHECK(buffer_step(100.0, 10.0, 4.0) == 60.0);
  CHECK(buffer_step(10.0, 10.0, 4.0) == 0.0);
  CHECK(buffer_step(0.0, 10.0, 4.0) == 0.0);
}

TEST_CASE("two-antenna rate at the antenna positions") {
  Scenario s = builtin_scenario("pt-obstacles");
  // R0 * log2(1 + K / h^gamma) plus the far antenna's contribution.
  const double near = 0.753 * std::log2(1.0 + 1e4);
  const double far = 0.188 * std::log2(1.0 + 1e4 / std::pow(141.0, 2.0));
  CHECK(sample_rate(s, {100, 170}) == doctest::Approx(near + far).epsilon(1e-12));
  CHECK(sample_rate(s, {100, 170}) == doctest::Approx(10.0).epsilon(0.02));
  const RateBounds rb = scan_rate_bounds(s);
  CHECK(rb.hi >= sample_rate(s, {100, 170}) - 1e-12);
  CHECK(rb.lo > 0.0);
  CHECK(rb.lo < rb.hi);
}

TEST_CASE("fading factor multiplies the SNR") {
  Scenario s = builtin_scenario("pn-single");
  const Position p{60, 60};
  const double S = 1e4 / std::pow(distance(p, {100, 30}) + 1.0, 2.0);
  CHECK(measure_snr(s, p, 0.8) == doctest::Approx(0.8 * S));
  CHECK(sample_rate(s, p, 0.8) == doctest::Approx(0.753 * std::log2(1.0 + 0.8 * S)));
  Scenario two = builtin_scenario("pt-obstacles");
  CHECK_THROWS_AS(measure_snr(two, p), Error);
}

TEST_CASE("obstacle membership uses the closed enlarged rectangle") {
  Scenario s = builtin_scenario("pt-obstacles");
  // Horizontal obstacle at (100, 100), enlarged to 50 x 10.
  CHECK(in_obstacle({100, 100}, s));
  CHECK(in_obstacle({125, 105}, s));
  CHECK_FALSE(in_obstacle({125.001, 100}, s));
  CHECK_FALSE(in_obstacle({100, 105.001}, s));
  // Vertical obstacle at (50, 170): 10 wide along x, 50 long along y.
  CHECK(in_obstacle({55, 195}, s));
  CHECK_FALSE(in_obstacle({56, 170}, s));
}

TEST_CASE("Rice normalization constant") {
  for (double v : {0.0, 1.0, 5.0, 15.0, 30.0})
    CHECK(compute_ez(v) == doctest::Approx(rice_mean_closed_form(v)).epsilon(1e-9));
  // The Bessel form overflows for large v; use the large-v expansion there.
  CHECK(compute_ez(100.0) == doctest::Approx(100.0 + 1.0 / 200.0).epsilon(1e-7));
  const FadingModel f = make_fading(15.0);
  CHECK(f.enabled);
  CHECK(f.norm_ez == doctest::Approx(rice_mean_closed_form(15.0)).epsilon(1e-9));
}

TEST_CASE("fading disabled returns exactly one") {
  Rng rng(3);
  FadingModel off;
  for (int i = 0; i < 10; ++i) CHECK(sample_fading(off, rng) == 1.0);
}

TEST_CASE("fading draws are positive with unit mean") {
  const FadingModel f = make_fading(5.0);
  Rng rng(11);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = sample_fading(f, rng);
    REQUIRE(z >= 0.0);
    sum += z;
  }
  CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("seed derivation is a pure function of its path") {
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(2, {2, 3}));
  Rng a = make_stream(5, Stream::Fading), b = make_stream(5, Stream::Controller);
  CHECK(a() != b());
}

TEST_CASE("tabulated SNR interpolates bilinearly and clamps outside") {
  TabulatedSnr t;
  t.xs = {0.0, 1.0};
  t.ys = {0.0, 2.0};
  t.snr = {1.0, 3.0, 5.0, 7.0};
  CHECK(t.interpolate({0.5, 1.0}) == doctest::Approx(4.0));
  CHECK(t.interpolate({1.0, 0.0}) == doctest::Approx(3.0));
  CHECK(t.interpolate({-5.0, -5.0}) == doctest::Approx(1.0));
  CHECK(t.interpolate({9.0, 9.0}) == doctest::Approx(7.0));
  t.R0 = 1.0;
  t.bandwidth = 20.0;
  CHECK(sample_rate(RateModel{t}, {0.5, 1.0}) == doctest::Approx(20.0 * std::log2(5.0)));
}

TEST_CASE("heading action sets") {
  const auto u = heading_actions(1.0, 8, true);
  REQUIRE(u.size() == 9);
  CHECK(u[2].heading == doctest::Approx(std::numbers::pi / 2));
  CHECK(u.back().velocity == 0.0);
  CHECK(heading_actions(1.0, 4, false).size() == 4);
}

TEST_CASE("builtin scenarios load and validate") {
  for (const std::string& name : builtin_scenario_names()) {
    CAPTURE(name);
    const Scenario s = builtin_scenario(name);
    CHECK(s.name == name);
    CHECK_NOTHROW(validate(s));
  }
  CHECK(builtin_scenario_names().size() >= 4);
  CHECK_THROWS_AS(builtin_scenario("no-such-scenario"), Error);
}

TEST_CASE("scenario parser reports every invalid field") {
  const char* bad = R"({
    "name": "bad",
    "domain": {"x": [10, 0], "y": [0, 10]},
    "sample_period": -1,
    "dynamics": "integrator",
    "actions": {"velocity": 1, "headings": 4, "stop": true},
    "rate": {"type": "parametric", "antennas": [{"position": [5, 5], "K": 1e4, "h": 1, "gamma": 2, "R0": 1}]},
    "buffer_max": 100,
    "initial": {"position": [5, 5], "buffer": 10}
  })";
  try {
    parse_scenario(bad);
    FAIL("expected a configuration error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
    const std::string msg = e.what();
    CHECK(msg.find("domain") != std::string::npos);
    CHECK(msg.find("sample_period") != std::string::npos);
  }
}

TEST_CASE("scenario round trip through JSON text") {
  const char* doc = R"({
    // comments are allowed
    "name": "tiny",
    "domain": {"x": [0, 10], "y": [0, 10]},
    "sample_period": 1,
    "dynamics": "integrator",
    "actions": {"list": [{"velocity": 1, "heading": 0}, {"velocity": 0, "heading": 0}]},
    "rate": {"type": "parametric", "antennas": [{"position": [5, 5], "K": 100, "h": 1, "gamma": 2, "R0": 1}]},
    "buffer_max": 100,
    "initial": {"position": [1, 1], "buffer": 10},
    "goal": [9, 9]
  })";
  const Scenario s = parse_scenario(doc);
  CHECK(s.actions.size() == 2);
  REQUIRE(s.goal);
  CHECK(s.goal->x == 9.0);
  CHECK(s.dynamics == Dynamics::Integrator);
}
