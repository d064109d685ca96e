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

#include "txnav/gridfn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "txnav/error.hpp"

namespace txnav::grid {

std::size_t Subgrid::size() const {
  std::size_t n = 1;
  for (std::size_t m = 0; m < lo.size(); ++m) n *= hi[m] - lo[m] + 1;
  return n;
}

ValueGrid::ValueGrid(std::vector<std::vector<double>> axes) : axes_(std::move(axes)) {
  if (axes_.empty() || axes_.size() > kMaxDims)
    throw config_error("ValueGrid: dimension count must be in [1, " + std::to_string(kMaxDims) + "]");
  std::size_t n = 1;
  strides_.assign(axes_.size(), 0);
  for (std::size_t m = axes_.size(); m-- > 0;) {
    const auto& a = axes_[m];
    if (a.size() < 2) throw config_error("ValueGrid: every axis needs at least two points");
    for (std::size_t i = 1; i < a.size(); ++i)
      if (!(a[i] > a[i - 1])) throw config_error("ValueGrid: axis " + std::to_string(m) + " not strictly increasing");
    strides_[m] = n;
    n *= a.size();
  }
  theta_.assign(n, 0.0);
}

std::vector<double> ValueGrid::linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

void ValueGrid::set_theta(std::vector<double> theta) {
  if (theta.size() != theta_.size()) throw config_error("ValueGrid: theta size mismatch");
  theta_ = std::move(theta);
}

std::size_t ValueGrid::flat(std::span<const std::size_t> idx) const {
  std::size_t f = 0;
  for (std::size_t m = 0; m < axes_.size(); ++m) f += idx[m] * strides_[m];
  return f;
}

void ValueGrid::unflat(std::size_t flat, std::span<std::size_t> idx) const {
  for (std::size_t m = 0; m < axes_.size(); ++m) {
    idx[m] = flat / strides_[m];
    flat %= strides_[m];
  }
}

void ValueGrid::point(std::size_t flat, std::span<double> out) const {
  for (std::size_t m = 0; m < axes_.size(); ++m) {
    out[m] = axes_[m][flat / strides_[m]];
    flat %= strides_[m];
  }
}

Weights ValueGrid::weights(std::span<const double> state) const {
  const std::size_t d = axes_.size();
  std::array<std::size_t, kMaxDims> base{};
  std::array<double, kMaxDims> frac{};
  for (std::size_t m = 0; m < d; ++m) {
    const auto& a = axes_[m];
    const double x = std::clamp(state[m], a.front(), a.back());
    auto it = std::upper_bound(a.begin(), a.end(), x);
    std::size_t i = it == a.begin() ? 0 : static_cast<std::size_t>(it - a.begin()) - 1;
    i = std::min(i, a.size() - 2);
    base[m] = i;
    frac[m] = (x - a[i]) / (a[i + 1] - a[i]);
  }
  Weights w;
  for (std::size_t corner = 0; corner < (std::size_t{1} << d); ++corner) {
    double wt = 1.0;
    std::size_t f = 0;
    for (std::size_t m = 0; m < d; ++m) {
      const bool upper = (corner >> m) & 1u;
      wt *= upper ? frac[m] : 1.0 - frac[m];
      f += (base[m] + (upper ? 1 : 0)) * strides_[m];
    }
    if (wt > 0.0) {
      w.index[w.count] = f;
      w.weight[w.count] = wt;
      ++w.count;
    }
  }
  return w;
}

double ValueGrid::apply(const Weights& w, std::span<const double> theta) {
  double v = 0.0;
  for (std::size_t k = 0; k < w.count; ++k) v += w.weight[k] * theta[w.index[k]];
  return v;
}

double ValueGrid::interpolate(std::span<const double> state, std::span<const double> theta) const {
  return apply(weights(state), theta);
}

Subgrid ValueGrid::select_subgrid(std::span<const double> state, std::size_t radius) const {
  if (radius < 1) throw config_error("select_subgrid: radius must be >= 1");
  Subgrid sg;
  for (std::size_t m = 0; m < axes_.size(); ++m) {
    const auto& a = axes_[m];
    auto it = std::upper_bound(a.begin(), a.end(), state[m]);
    const std::size_t c = it == a.begin() ? 0 : static_cast<std::size_t>(it - a.begin()) - 1;
    sg.center.push_back(c);
    sg.lo.push_back(c >= radius ? c - radius : 0);
    sg.hi.push_back(std::min(a.size() - 1, c + radius));
  }
  return sg;
}

Subgrid ValueGrid::full() const {
  Subgrid sg;
  for (const auto& a : axes_) {
    sg.lo.push_back(0);
    sg.hi.push_back(a.size() - 1);
    sg.center.push_back(0);
  }
  return sg;
}

}  // namespace txnav::grid
