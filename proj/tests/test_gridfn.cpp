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

#include <numeric>
#include <random>

#include "doctest.h"
#include "txnav/error.hpp"
#include "txnav/gridfn.hpp"

using namespace txnav::grid;

namespace {

ValueGrid toy() {
  return ValueGrid({{0.0, 1.0, 3.0}, {0.0, 2.0}, {-1.0, 0.0, 1.0, 2.0}});
}

}  // namespace

TEST_CASE("linspace endpoints and spacing") {
  const auto a = ValueGrid::linspace(0.0, 200.0, 31);
  REQUIRE(a.size() == 31);
  CHECK(a.front() == 0.0);
  CHECK(a.back() == 200.0);
  CHECK(a[1] == doctest::Approx(200.0 / 30.0));
}

TEST_CASE("flat and multi-index are inverse") {
  const ValueGrid g = toy();
  CHECK(g.size() == 24);
  std::vector<std::size_t> idx(3);
  for (std::size_t f = 0; f < g.size(); ++f) {
    g.unflat(f, idx);
    CHECK(g.flat(idx) == f);
  }
}

TEST_CASE("weights are a partition of unity and exact at grid points") {
  const ValueGrid g = toy();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 4.0);
  for (int t = 0; t < 200; ++t) {
    const std::vector<double> x{u(rng), u(rng), u(rng)};
    const Weights w = g.weights(x);
    double sum = 0.0;
    for (std::size_t k = 0; k < w.count; ++k) {
      CHECK(w.weight[k] > 0.0);
      sum += w.weight[k];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w.count <= 8);
  }
  std::vector<double> p(3);
  for (std::size_t f = 0; f < g.size(); ++f) {
    g.point(f, p);
    const Weights w = g.weights(p);
    REQUIRE(w.count == 1);
    CHECK(w.index[0] == f);
  }
}

TEST_CASE("multilinear functions are interpolated exactly") {
  ValueGrid g = toy();
  // f = 2 + x - 3y + 0.5z + xy - 2yz + 0.25xyz is multilinear.
  const auto f = [](double x, double y, double z) {
    return 2 + x - 3 * y + 0.5 * z + x * y - 2 * y * z + 0.25 * x * y * z;
  };
  std::vector<double> theta(g.size()), p(3);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.point(i, p);
    theta[i] = f(p[0], p[1], p[2]);
  }
  g.set_theta(theta);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(0.0, 3.0), uy(0.0, 2.0), uz(-1.0, 2.0);
  for (int t = 0; t < 100; ++t) {
    const double x = ux(rng), y = uy(rng), z = uz(rng);
    const std::vector<double> s{x, y, z};
    CHECK(g.interpolate(s) == doctest::Approx(f(x, y, z)).epsilon(1e-12));
  }
}

TEST_CASE("queries outside the grid clamp to the boundary") {
  ValueGrid g({{0.0, 1.0}, {0.0, 1.0}});
  g.set_theta({1.0, 2.0, 3.0, 4.0});
  const std::vector<double> out{-5.0, 9.0}, edge{0.0, 1.0};
  CHECK(g.interpolate(out) == g.interpolate(edge));
}

TEST_CASE("subgrid selection uses the grid point below the state") {
  const ValueGrid g({ValueGrid::linspace(0, 10, 11), ValueGrid::linspace(0, 10, 11)});
  const std::vector<double> x{4.5, 0.2};
  const Subgrid sg = g.select_subgrid(x, 2);
  CHECK(sg.center[0] == 4);
  CHECK(sg.lo[0] == 2);
  CHECK(sg.hi[0] == 6);
  CHECK(sg.center[1] == 0);
  CHECK(sg.lo[1] == 0);
  CHECK(sg.hi[1] == 2);
  CHECK(sg.size() == 15);
  const std::vector<double> top{10.0, 10.0};
  const Subgrid t = g.select_subgrid(top, 3);
  CHECK(t.center[0] == 10);
  CHECK(t.lo[0] == 7);
  CHECK(t.hi[0] == 10);
}

TEST_CASE("for_each visits each subgrid point once, last dimension fastest") {
  const ValueGrid g = toy();
  std::vector<std::size_t> seen;
  g.for_each(g.full(), [&](std::size_t f) { seen.push_back(f); });
  REQUIRE(seen.size() == g.size());
  for (std::size_t i = 0; i < seen.size(); ++i) CHECK(seen[i] == i);
}

TEST_CASE("invalid axes are rejected") {
  CHECK_THROWS_AS(ValueGrid(std::vector<std::vector<double>>{{0.0}}), txnav::Error);
  CHECK_THROWS_AS(ValueGrid(std::vector<std::vector<double>>{{1.0, 0.0}}), txnav::Error);
  ValueGrid g = toy();
  CHECK_THROWS_AS(g.set_theta({1.0}), txnav::Error);
}
