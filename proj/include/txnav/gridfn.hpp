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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace txnav::grid {

/// Highest state dimension supported (2 positions + buffer + 3 extra states).
inline constexpr std::size_t kMaxDims = 6;

/// Sparse interpolation weights: at most 2^dims (index, weight) pairs.
struct Weights {
  std::array<std::size_t, (1u << kMaxDims)> index{};
  std::array<double, (1u << kMaxDims)> weight{};
  std::size_t count = 0;
};

/// Per-dimension index range [lo, hi], zero-based and inclusive.
struct Subgrid {
  std::vector<std::size_t> lo;
  std::vector<std::size_t> hi;
  std::vector<std::size_t> center;

  std::size_t size() const;
};

/// Multilinear (finite-element) value function over a rectangular grid.
/// The state vector layout is (p1, p2, extra..., b).
class ValueGrid {
 public:
  explicit ValueGrid(std::vector<std::vector<double>> axes);

  /// Equidistant axis with n points on [lo, hi].
  static std::vector<double> linspace(double lo, double hi, std::size_t n);

  std::size_t dims() const { return axes_.size(); }
  std::size_t size() const { return theta_.size(); }
  const std::vector<double>& axis(std::size_t d) const { return axes_[d]; }

  std::span<double> theta() { return theta_; }
  std::span<const double> theta() const { return theta_; }
  void set_theta(std::vector<double> theta);

  /// Flat index of a multi-index.
  std::size_t flat(std::span<const std::size_t> idx) const;
  /// Multi-index of a flat index.
  void unflat(std::size_t flat, std::span<std::size_t> idx) const;
  /// Coordinates of grid point `flat`.
  void point(std::size_t flat, std::span<double> out) const;

  /// Weights phi(x); the state is clamped to the grid box first. Weights are
  /// nonnegative and sum to one.
  Weights weights(std::span<const double> state) const;

  double interpolate(std::span<const double> state) const { return interpolate(state, theta_); }
  double interpolate(std::span<const double> state, std::span<const double> theta) const;
  static double apply(const Weights& w, std::span<const double> theta);

  /// Local subgrid: per dimension the center is the largest i with
  /// x_i <= state (first point when below the grid), extended by `radius`
  /// points to each side and cut at the grid bounds.
  Subgrid select_subgrid(std::span<const double> state, std::size_t radius) const;
  Subgrid full() const;

  /// Calls fn(flat_index) for every point of the subgrid, last dimension
  /// fastest.
  template <class Fn>
  void for_each(const Subgrid& sg, Fn&& fn) const;

 private:
  std::vector<std::vector<double>> axes_;
  std::vector<std::size_t> strides_;
  std::vector<double> theta_;
};

template <class Fn>
void ValueGrid::for_each(const Subgrid& sg, Fn&& fn) const {
  const std::size_t d = dims();
  std::array<std::size_t, kMaxDims> idx{};
  for (std::size_t m = 0; m < d; ++m) idx[m] = sg.lo[m];
  for (;;) {
    fn(flat(std::span<const std::size_t>(idx.data(), d)));
    std::size_t m = d;
    while (m > 0) {
      --m;
      if (idx[m] < sg.hi[m]) {
        ++idx[m];
        break;
      }
      idx[m] = sg.lo[m];
      if (m == 0) return;
    }
  }
}

}  // namespace txnav::grid
