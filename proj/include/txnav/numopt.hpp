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

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace txnav::numopt {

/// Settings for the bound-constrained Nelder-Mead minimizer. The defaults are
/// the ones used for SNR regression (TolFun 0.1, MaxIter 5000,
/// MaxFunEvals 10000).
struct OptimizerSettings {
  double function_tolerance = 0.1;
  /// Optional simplex-size tolerance; when positive, termination additionally
  /// requires every vertex within this distance (max-norm) of the best one.
  double x_tolerance = 0.0;
  int max_iterations = 5000;
  int max_evaluations = 10000;
  std::vector<double> lower;  ///< empty means unbounded
  std::vector<double> upper;
};

struct OptimizerResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;  ///< tolerance met (false on budget exhaustion)
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Nelder-Mead simplex descent with box constraints enforced by clamping
/// every candidate vertex. Throws ModelError if the objective is not finite
/// at `start`, ConfigError for inconsistent bounds or a start outside them.
OptimizerResult nelder_mead(const Objective& objective, std::vector<double> start,
                            const OptimizerSettings& settings);

/// Adaptive Gauss-Kronrod quadrature of `f` over [0, 1]. Throws ModelError on
/// a non-finite integrand value.
double integrate_01(const std::function<double(double)>& f, double rel_tol = 1e-8);

/// Same as integrate_01 on an arbitrary finite interval.
double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-8);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
};

/// Shrinks [lo, hi] around a sign change of `g` until hi - lo <= tol. The
/// returned bracket keeps the sign pattern of the input endpoints. Throws
/// BracketError when g(lo) and g(hi) have the same strict sign.
Bracket bisect_bracket(const std::function<double(double)>& g, double lo, double hi, double tol);

/// Root of `g` in [lo, hi] within `tol`. Returns an endpoint exactly when g
/// vanishes there.
double bisect(const std::function<double(double)>& g, double lo, double hi, double tol);

}  // namespace txnav::numopt
