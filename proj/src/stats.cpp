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
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "txnav/error.hpp"
#include "txnav/harness.hpp"

namespace txnav::harness {

Interval confidence_interval(std::span<const double> samples) {
  if (samples.empty()) throw config_error("confidence_interval: no samples");
  const double n = static_cast<double>(samples.size());
  Interval out;
  out.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  if (samples.size() < 2) return out;
  double ss = 0.0;
  for (double x : samples) ss += (x - out.mean) * (x - out.mean);
  if (ss == 0.0) return out;
  const double sd = std::sqrt(ss / (n - 1.0));
  const boost::math::students_t dist(n - 1.0);
  out.half_width = boost::math::quantile(dist, 0.975) * sd / std::sqrt(n);
  return out;
}

}  // namespace txnav::harness
