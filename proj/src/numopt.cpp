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

#include "txnav/numopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "txnav/error.hpp"

namespace txnav::numopt {

namespace {

using Point = std::vector<double>;

constexpr int kMaxRestarts = 8;

struct Box {
  const std::vector<double>* lo;
  const std::vector<double>* hi;

  bool empty() const { return lo->empty(); }
  bool on_bound(const Point& x) const {
    if (lo->empty()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] == (*lo)[i] || x[i] == (*hi)[i]) return true;
    return false;
  }

  void clamp(Point& x) const {
    if (lo->empty()) return;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], (*lo)[i], (*hi)[i]);
  }
};

void check_bounds(const OptimizerSettings& s, const Point& start) {
  if (s.lower.empty() != s.upper.empty())
    throw config_error("nelder_mead: lower and upper bounds must both be given or both be empty");
  if (s.lower.empty()) return;
  if (s.lower.size() != start.size() || s.upper.size() != start.size())
    throw config_error("nelder_mead: bound dimension does not match start");
  for (std::size_t i = 0; i < start.size(); ++i) {
    if (!(s.lower[i] <= s.upper[i]))
      throw config_error("nelder_mead: lower bound above upper bound at index " + std::to_string(i));
    if (start[i] < s.lower[i] || start[i] > s.upper[i])
      throw config_error("nelder_mead: start outside bounds at index " + std::to_string(i));
  }
}

}  // namespace

OptimizerResult nelder_mead(const Objective& objective, Point start, const OptimizerSettings& settings) {
  if (!(settings.function_tolerance > 0.0)) throw config_error("nelder_mead: function tolerance must be positive");
  check_bounds(settings, start);
  const Box box{&settings.lower, &settings.upper};
  const std::size_t n = start.size();

  OptimizerResult out;
  auto eval = [&](const Point& x) {
    ++out.evaluations;
    const double v = objective(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  const double f_start = objective(start);
  ++out.evaluations;
  if (!std::isfinite(f_start)) throw Error(ErrorCode::ModelError, "nelder_mead: objective not finite at start");
  if (n == 0) {
    out.x = std::move(start);
    out.value = f_start;
    out.converged = true;
    return out;
  }

  std::vector<Point> simplex(n + 1, start);
  std::vector<double> fv(n + 1, f_start);
  auto initialize = [&](const Point& base, double f_base) {
    simplex.assign(n + 1, base);
    fv.assign(n + 1, f_base);
    for (std::size_t i = 0; i < n; ++i) {
      Point& v = simplex[i + 1];
      const double step = base[i] != 0.0 ? 0.05 * std::abs(base[i]) : 0.00025;
      v[i] = base[i] + step;
      box.clamp(v);
      if (v[i] == base[i]) {
        v[i] = base[i] - step;
        box.clamp(v);
      }
      fv[i + 1] = eval(v);
    }
  };
  initialize(start, f_start);
  // Clamping can flatten the simplex onto a bound; runs ending on a bound
  // restart from the best vertex until a restart no longer improves.
  int restarts_left = box.empty() ? 0 : kMaxRestarts;
  double f_before_restart = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> order(n + 1);
  Point centroid(n), xr(n), xe(n), xc(n);
  auto along = [&](Point& dst, const Point& from, double t) {
    for (std::size_t j = 0; j < n; ++j) dst[j] = centroid[j] + t * (from[j] - centroid[j]);
    box.clamp(dst);
  };

  for (;;) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    {
      std::vector<Point> s2(n + 1);
      std::vector<double> f2(n + 1);
      for (std::size_t i = 0; i <= n; ++i) {
        s2[i] = std::move(simplex[order[i]]);
        f2[i] = fv[order[i]];
      }
      simplex.swap(s2);
      fv.swap(f2);
    }

    bool done = fv[n] - fv[0] <= settings.function_tolerance;
    if (done && settings.x_tolerance > 0.0) {
      for (std::size_t i = 1; i <= n && done; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (std::abs(simplex[i][j] - simplex[0][j]) > settings.x_tolerance) {
            done = false;
            break;
          }
    }
    if (done && restarts_left > 0 && box.on_bound(simplex[0]) && fv[0] < f_before_restart &&
        out.evaluations + static_cast<int>(n) < settings.max_evaluations) {
      --restarts_left;
      f_before_restart = fv[0];
      const Point best = simplex[0];
      initialize(best, fv[0]);
      continue;
    }
    if (done) {
      out.converged = true;
      break;
    }
    if (out.iterations >= settings.max_iterations || out.evaluations >= settings.max_evaluations) break;
    ++out.iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
    for (double& c : centroid) c /= static_cast<double>(n);

    const Point& worst = simplex[n];
    along(xr, worst, -1.0);
    const double fr = eval(xr);
    if (fr < fv[0]) {
      along(xe, worst, -2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[n] = xe;
        fv[n] = fe;
      } else {
        simplex[n] = xr;
        fv[n] = fr;
      }
      continue;
    }
    if (fr < fv[n - 1]) {
      simplex[n] = xr;
      fv[n] = fr;
      continue;
    }
    if (fr < fv[n]) {
      along(xc, xr, 0.5);
      const double fc = eval(xc);
      if (fc <= fr) {
        simplex[n] = xc;
        fv[n] = fc;
        continue;
      }
    } else {
      along(xc, worst, 0.5);
      const double fc = eval(xc);
      if (fc < fv[n]) {
        simplex[n] = xc;
        fv[n] = fc;
        continue;
      }
    }
    // shrink toward the best vertex
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
      box.clamp(simplex[i]);
      fv[i] = eval(simplex[i]);
    }
  }

  out.x = simplex[0];
  out.value = fv[0];
  return out;
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  auto checked = [&f](double s) {
    const double v = f(s);
    if (!std::isfinite(v)) throw Error(ErrorCode::ModelError, "integrate: non-finite integrand value");
    return v;
  };
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(checked, a, b, 15, rel_tol);
}

double integrate_01(const std::function<double(double)>& f, double rel_tol) {
  return integrate(f, 0.0, 1.0, rel_tol);
}

Bracket bisect_bracket(const std::function<double(double)>& g, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw config_error("bisect: tolerance must be positive");
  if (lo > hi) std::swap(lo, hi);
  const double glo = g(lo);
  const double ghi = g(hi);
  if (glo == 0.0) return {lo, lo, 0};
  if (ghi == 0.0) return {hi, hi, 0};
  if ((glo < 0.0) == (ghi < 0.0)) throw Error(ErrorCode::BracketError, "bisect: endpoints do not bracket a root");
  const bool rising = glo < 0.0;
  Bracket b{lo, hi, 0};
  while (b.hi - b.lo > tol) {
    const double mid = 0.5 * (b.lo + b.hi);
    if (mid <= b.lo || mid >= b.hi) break;
    const double gm = g(mid);
    ++b.iterations;
    if (gm == 0.0) return {mid, mid, b.iterations};
    if ((gm < 0.0) == rising)
      b.lo = mid;
    else
      b.hi = mid;
  }
  return b;
}

double bisect(const std::function<double(double)>& g, double lo, double hi, double tol) {
  const Bracket b = bisect_bracket(g, lo, hi, tol);
  return b.lo == b.hi ? b.lo : 0.5 * (b.lo + b.hi);
}

}  // namespace txnav::numopt
