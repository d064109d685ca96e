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
#include <random>

#include "doctest.h"
#include "txnav/error.hpp"
#include "txnav/llr.hpp"

using namespace txnav;
using namespace txnav::llr;

TEST_CASE("nearest neighbors are ordered by distance, ties by insertion") {
  SampleStore s;
  s.add({1, 0}, 1.0);
  s.add({0, 1}, 2.0);
  s.add({3, 0}, 3.0);
  s.add({-1, 0}, 4.0);
  const auto nn = nearest(s, {0, 0}, 3);
  REQUIRE(nn.size() == 3);
  CHECK(nn[0] == 0);
  CHECK(nn[1] == 1);
  CHECK(nn[2] == 3);
  CHECK(nearest(s, {0, 0}, 10).size() == 4);
}

TEST_CASE("duplicate positions overwrite the stored value") {
  SampleStore s(1e-9);
  CHECK(s.add({1, 1}, 1.0) == 0);
  CHECK(s.add({1, 1}, 5.0) == 0);
  CHECK(s.size() == 1);
  CHECK(s[0].value == 5.0);
}

TEST_CASE("N = 1 is nearest-neighbor lookup") {
  SampleStore s;
  s.add({0, 0}, 1.0);
  s.add({10, 0}, 2.0);
  CHECK(estimate(s, {4, 3}, LlrConfig{.neighbors = 1}) == 1.0);
  CHECK(estimate(s, {6, 0}, LlrConfig{.neighbors = 1}) == 2.0);
}

TEST_CASE("affine fields are reproduced exactly") {
  const auto f = [](Position p) { return 2.0 * p.x + 3.0 * p.y + 1.0; };
  SampleStore s;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 200.0);
  for (int i = 0; i < 40; ++i) {
    const Position p{u(rng), u(rng)};
    s.add(p, f(p));
  }
  for (int n : {3, 4, 6}) {
    for (int t = 0; t < 20; ++t) {
      const Position q{u(rng), u(rng)};
      CHECK(std::abs(estimate(s, q, LlrConfig{.neighbors = n}) - f(q)) <= 1e-9);
    }
    const auto g = estimate_gradient(s, {100, 100}, LlrConfig{.neighbors = n});
    REQUIRE(g);
    CHECK(g->x == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(g->y == doctest::Approx(3.0).epsilon(1e-9));
  }
}

TEST_CASE("constant samples give a zero gradient") {
  SampleStore s;
  s.add({0, 0}, 4.0);
  s.add({1, 0}, 4.0);
  s.add({0, 1}, 4.0);
  const auto g = estimate_gradient(s, {0.2, 0.2}, LlrConfig{.neighbors = 3});
  REQUIRE(g);
  CHECK(std::abs(g->x) < 1e-12);
  CHECK(std::abs(g->y) < 1e-12);
}

TEST_CASE("collinear neighbors fall back to the first nearest neighbor") {
  SampleStore s;
  s.add({0, 0}, 1.0);
  s.add({1, 1}, 2.0);
  s.add({2, 2}, 3.0);
  s.add({3, 3}, 4.0);
  const LlrConfig cfg{.neighbors = 4};
  CHECK_FALSE(fit_plane(s, {1.2, 0.9}, cfg));
  CHECK_FALSE(estimate_gradient(s, {1.2, 0.9}, cfg));
  CHECK(estimate(s, {1.2, 0.9}, cfg) == 2.0);
}

TEST_CASE("fewer than three samples fall back to the nearest sample") {
  SampleStore s;
  s.add({0, 0}, 1.0);
  s.add({5, 0}, 7.0);
  CHECK(estimate(s, {4, 1}, LlrConfig{.neighbors = 3}) == 7.0);
}

TEST_CASE("an empty store is not ready") {
  SampleStore s;
  try {
    estimate(s, {0, 0}, LlrConfig{});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EstimatorNotReady);
  }
}

TEST_CASE("regression over more neighbors than parameters is least squares") {
  // Oracle: normal equations solved by hand for four symmetric points.
  SampleStore s;
  s.add({1, 0}, 1.0);
  s.add({-1, 0}, 3.0);
  s.add({0, 1}, 2.0);
  s.add({0, -1}, 6.0);
  const auto plane = fit_plane(s, {0, 0}, LlrConfig{.neighbors = 4});
  REQUIRE(plane);
  CHECK(plane->alpha.x == doctest::Approx(-1.0));
  CHECK(plane->alpha.y == doctest::Approx(-2.0));
  CHECK(plane->beta == doctest::Approx(3.0));
}
