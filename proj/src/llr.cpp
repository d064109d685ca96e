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

#include "txnav/llr.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Dense>

#include "txnav/error.hpp"

namespace txnav::llr {

namespace {

// Affine rank (0, 1 or 2) of a point set: rank of the centered coordinates.
int affine_rank(const std::vector<Position>& pts, double rel_tol) {
  if (pts.size() < 2) return 0;
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const Position& p : pts) mean += Eigen::Vector2d(p.x, p.y);
  mean /= static_cast<double>(pts.size());
  Eigen::MatrixX2d m(pts.size(), 2);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    m(i, 0) = pts[i].x - mean.x();
    m(i, 1) = pts[i].y - mean.y();
  }
  const Eigen::Vector2d sv = Eigen::JacobiSVD<Eigen::MatrixX2d>(m).singularValues();
  if (!(sv(0) > 0.0)) return 0;
  return sv(1) > rel_tol * sv(0) ? 2 : 1;
}

Plane least_squares_plane(const SampleStore& store, const std::vector<std::size_t>& idx) {
  Eigen::Vector2d mp = Eigen::Vector2d::Zero();
  double mv = 0.0;
  for (std::size_t i : idx) {
    mp += Eigen::Vector2d(store[i].position.x, store[i].position.y);
    mv += store[i].value;
  }
  mp /= static_cast<double>(idx.size());
  mv /= static_cast<double>(idx.size());
  Eigen::MatrixX2d a(idx.size(), 2);
  Eigen::VectorXd b(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const Sample& s = store[idx[r]];
    a(r, 0) = s.position.x - mp.x();
    a(r, 1) = s.position.y - mp.y();
    b(r) = s.value - mv;
  }
  const Eigen::Vector2d alpha = a.colPivHouseholderQr().solve(b);
  return {{alpha.x(), alpha.y()}, mv - alpha.dot(mp)};
}

}  // namespace

std::size_t SampleStore::add(Position p, double value) {
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (distance(samples_[i].position, p) < tolerance_) {
      samples_[i].value = value;
      return i;
    }
  }
  samples_.push_back({p, value});
  return samples_.size() - 1;
}

std::vector<std::size_t> nearest(const SampleStore& store, Position q, std::size_t n) {
  std::vector<std::size_t> idx(store.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<double> d2(store.size());
  for (std::size_t i = 0; i < store.size(); ++i) {
    const Vec2 d = store[i].position - q;
    d2[i] = d.x * d.x + d.y * d.y;
  }
  n = std::min(n, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n), idx.end(),
                    [&](std::size_t a, std::size_t b) { return d2[a] < d2[b] || (d2[a] == d2[b] && a < b); });
  idx.resize(n);
  return idx;
}

std::optional<Plane> fit_plane(const SampleStore& store, Position q, const LlrConfig& cfg) {
  if (cfg.neighbors < 3 || store.size() < 3) return std::nullopt;
  const std::vector<std::size_t> nn = nearest(store, q, static_cast<std::size_t>(cfg.neighbors));
  std::vector<Position> pts;
  for (std::size_t i : nn) pts.push_back(store[i].position);
  if (affine_rank(pts, cfg.rank_tolerance) == 2) return least_squares_plane(store, nn);

  // Dependent neighbor set: keep, nearest first, the neighbors that raise the
  // affine rank of the kept set.
  std::vector<std::size_t> kept{nn.front()};
  std::vector<Position> kept_pts{pts.front()};
  int rank = 0;
  for (std::size_t k = 1; k < nn.size() && rank < 2; ++k) {
    kept_pts.push_back(pts[k]);
    const int r = affine_rank(kept_pts, cfg.rank_tolerance);
    if (r > rank) {
      rank = r;
      kept.push_back(nn[k]);
    } else {
      kept_pts.pop_back();
    }
  }
  if (rank < 2) return std::nullopt;
  return least_squares_plane(store, kept);
}

double estimate(const SampleStore& store, Position q, const LlrConfig& cfg) {
  if (store.empty()) throw Error(ErrorCode::EstimatorNotReady, "llr::estimate: sample store is empty");
  if (cfg.neighbors >= 3) {
    if (auto plane = fit_plane(store, q, cfg)) return (*plane)(q);
  }
  return store[nearest(store, q, 1).front()].value;
}

std::optional<Vec2> estimate_gradient(const SampleStore& store, Position q, const LlrConfig& cfg) {
  if (auto plane = fit_plane(store, q, cfg)) return plane->alpha;
  return std::nullopt;
}

}  // namespace txnav::llr
