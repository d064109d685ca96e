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

#include "doctest.h"
#include "txnav/error.hpp"
#include "txnav/numopt.hpp"

using namespace txnav;
using namespace txnav::numopt;

TEST_CASE("quadrature is exact on low-degree polynomials") {
  // Antiderivative oracle for p(x) = 1 - 3x + 2x^2 + 5x^3 - x^4 + 7x^5.
  const auto p = [](double x) { return 1 - 3 * x + 2 * x * x + 5 * x * x * x - std::pow(x, 4) + 7 * std::pow(x, 5); };
  const auto P = [](double x) {
    return x - 1.5 * x * x + 2.0 / 3.0 * x * x * x + 1.25 * std::pow(x, 4) - 0.2 * std::pow(x, 5) +
           7.0 / 6.0 * std::pow(x, 6);
  };
  CHECK(integrate_01(p) == doctest::Approx(P(1.0) - P(0.0)).epsilon(1e-12));
  CHECK(integrate(p, -2.0, 3.0) == doctest::Approx(P(3.0) - P(-2.0)).epsilon(1e-12));
}

TEST_CASE("quadrature of a smooth transcendental integrand") {
  CHECK(integrate_01([](double x) { return std::exp(x); }) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-10));
}

TEST_CASE("quadrature rejects non-finite integrands") {
  try {
    integrate_01([](double) { return std::nan(""); });
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ModelError);
  }
}

TEST_CASE("Nelder-Mead finds an interior quadratic minimum") {
  OptimizerSettings s;
  s.function_tolerance = 1e-12;
  s.x_tolerance = 1e-8;
  const auto f = [](const std::vector<double>& x) {
    return (x[0] - 1.5) * (x[0] - 1.5) + 3.0 * (x[1] + 0.5) * (x[1] + 0.5) + 2.0;
  };
  const OptimizerResult r = nelder_mead(f, {0.0, 0.0}, s);
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(1.5).epsilon(1e-4));
  CHECK(r.x[1] == doctest::Approx(-0.5).epsilon(1e-4));
  CHECK(r.value == doctest::Approx(2.0));
}

TEST_CASE("Nelder-Mead respects bounds and finds the boundary minimum") {
  OptimizerSettings s;
  s.function_tolerance = 1e-12;
  s.x_tolerance = 1e-9;
  s.lower = {0.0, 0.0};
  s.upper = {1.0, 1.0};
  const auto f = [](const std::vector<double>& x) { return (x[0] - 2.0) * (x[0] - 2.0) + (x[1] - 0.3) * (x[1] - 0.3); };
  int outside = 0;
  const auto g = [&](const std::vector<double>& x) {
    if (x[0] < 0.0 || x[0] > 1.0 || x[1] < 0.0 || x[1] > 1.0) ++outside;
    return f(x);
  };
  const OptimizerResult r = nelder_mead(g, {0.5, 0.5}, s);
  CHECK(outside == 0);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(r.x[1] == doctest::Approx(0.3).epsilon(1e-3));
}

TEST_CASE("Nelder-Mead value never exceeds the start value") {
  OptimizerSettings s;
  s.function_tolerance = 1e-12;
  s.max_evaluations = 30;
  const auto f = [](const std::vector<double>& x) { return std::abs(x[0]) + std::abs(x[1] - 1.0); };
  const OptimizerResult r = nelder_mead(f, {3.0, -2.0}, s);
  CHECK(r.value <= f({3.0, -2.0}));
  CHECK(r.evaluations <= 30);
  CHECK_FALSE(r.converged);
}

TEST_CASE("Nelder-Mead input validation") {
  OptimizerSettings s;
  s.lower = {1.0};
  s.upper = {0.0};
  CHECK_THROWS_AS(nelder_mead([](const std::vector<double>& x) { return x[0]; }, {0.5}, s), Error);
  CHECK_THROWS_AS(nelder_mead([](const std::vector<double>&) { return std::nan(""); }, {0.5}, OptimizerSettings{}),
                  Error);
}

TEST_CASE("bisection brackets a root and keeps the sign pattern") {
  const auto g = [](double x) { return x * x - 2.0; };
  const Bracket b = bisect_bracket(g, 0.0, 2.0, 1e-12);
  CHECK(g(b.lo) <= 0.0);
  CHECK(g(b.hi) >= 0.0);
  CHECK(b.hi - b.lo <= 1e-12);
  CHECK(bisect(g, 0.0, 2.0, 1e-12) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-11));
  CHECK(bisect([](double x) { return x - 1.0; }, 1.0, 3.0, 1e-9) == 1.0);
  try {
    bisect_bracket(g, 2.0, 3.0, 1e-6);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BracketError);
  }
}
