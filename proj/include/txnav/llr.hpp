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
#include <optional>
#include <span>
#include <vector>

#include "txnav/world.hpp"

namespace txnav::llr {

struct Sample {
  Position position;
  double value = 0.0;
};

struct LlrConfig {
  int neighbors = 1;              ///< N
  double dedupe_tolerance = 1e-9; ///< m
  double rank_tolerance = 1e-8;   ///< singular values below this fraction of the largest count as zero
};

/// Insertion-ordered memory of (position, value) samples.
class SampleStore {
 public:
  explicit SampleStore(double dedupe_tolerance = 1e-9) : tolerance_(dedupe_tolerance) {}

  /// Appends the sample, or overwrites the value of an existing sample
  /// closer than the dedupe tolerance. Returns the sample's index.
  std::size_t add(Position p, double value);

  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  std::span<const Sample> samples() const { return samples_; }
  const Sample& operator[](std::size_t i) const { return samples_[i]; }

 private:
  double tolerance_;
  std::vector<Sample> samples_;
};

/// Indices of the `n` nearest samples to `q`, nearest first; distance ties go
/// to the earlier insertion.
std::vector<std::size_t> nearest(const SampleStore& store, Position q, std::size_t n);

/// Affine fit value = alpha . p + beta.
struct Plane {
  Vec2 alpha;
  double beta = 0.0;
  double operator()(Position p) const { return alpha.x * p.x + alpha.y * p.y + beta; }
};

/// Least-squares plane through the N nearest neighbors of `q`. Empty when
/// fewer than three affinely independent neighbors are available.
std::optional<Plane> fit_plane(const SampleStore& store, Position q, const LlrConfig& cfg);

/// Local linear regression estimate at `q`. Falls back to the nearest
/// sample's value when no plane can be fitted. Throws EstimatorNotReady on an
/// empty store.
double estimate(const SampleStore& store, Position q, const LlrConfig& cfg);

/// Gradient of the fitted plane; empty when the neighbors are affinely
/// dependent or N < 3.
std::optional<Vec2> estimate_gradient(const SampleStore& store, Position q, const LlrConfig& cfg);

}  // namespace txnav::llr
