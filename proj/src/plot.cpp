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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "txnav/error.hpp"
#include "txnav/harness.hpp"

namespace txnav::harness {

namespace {

constexpr int kLattice = 200;
constexpr int kLevels = 10;
constexpr double kCanvas = 600.0;
constexpr double kMargin = 20.0;

struct Frame {
  Box box;
  double sx(double x) const { return kMargin + (x - box.x_lo) / (box.x_hi - box.x_lo) * kCanvas; }
  double sy(double y) const { return kMargin + (box.y_hi - y) / (box.y_hi - box.y_lo) * kCanvas; }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string buffer_color(double fraction) {
  // Full buffer is dark blue, empty is yellow.
  const double f = std::clamp(fraction, 0.0, 1.0);
  const auto mix = [f](int full, int empty) { return static_cast<int>(std::lround(empty + f * (full - empty))); };
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(0x21, 0xff), mix(0x46, 0xd7), mix(0xac, 0x00));
  return buf;
}

// Segments of the level set {f = level} on a uniform lattice, by marching
// squares with the cell average resolving saddles.
void contour(std::ostringstream& os, const std::vector<double>& f, const std::vector<double>& xs,
             const std::vector<double>& ys, double level, const Frame& fr) {
  const int n = static_cast<int>(xs.size());
  const auto at = [&](int i, int j) { return f[static_cast<std::size_t>(j) * n + i]; };
  const auto cross = [&](double x0, double y0, double v0, double x1, double y1, double v1) {
    const double t = (level - v0) / (v1 - v0);
    return std::array<double, 2>{x0 + t * (x1 - x0), y0 + t * (y1 - y0)};
  };
  os << "<path fill=\"none\" stroke=\"#888888\" stroke-width=\"0.7\" d=\"";
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      const double v[4] = {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
      const double x0 = xs[i], x1 = xs[i + 1], y0 = ys[j], y1 = ys[j + 1];
      int code = 0;
      for (int c = 0; c < 4; ++c)
        if (v[c] > level) code |= 1 << c;
      if (code == 0 || code == 15) continue;
      // Edge crossings: bottom, right, top, left.
      const std::array<std::array<double, 2>, 4> e{cross(x0, y0, v[0], x1, y0, v[1]), cross(x1, y0, v[1], x1, y1, v[2]),
                                                   cross(x1, y1, v[2], x0, y1, v[3]), cross(x0, y1, v[3], x0, y0, v[0])};
      std::vector<std::pair<int, int>> segs;
      const bool high_center = (v[0] + v[1] + v[2] + v[3]) / 4.0 > level;
      switch (code) {
        case 1: case 14: segs = {{3, 0}}; break;
        case 2: case 13: segs = {{0, 1}}; break;
        case 3: case 12: segs = {{3, 1}}; break;
        case 4: case 11: segs = {{1, 2}}; break;
        case 6: case 9: segs = {{0, 2}}; break;
        case 7: case 8: segs = {{3, 2}}; break;
        case 5: segs = high_center ? std::vector<std::pair<int, int>>{{3, 2}, {0, 1}}
                                   : std::vector<std::pair<int, int>>{{3, 0}, {1, 2}}; break;
        case 10: segs = high_center ? std::vector<std::pair<int, int>>{{3, 0}, {1, 2}}
                                    : std::vector<std::pair<int, int>>{{3, 2}, {0, 1}}; break;
        default: break;
      }
      for (const auto& [a, b] : segs)
        os << 'M' << fmt(fr.sx(e[a][0])) << ' ' << fmt(fr.sy(e[a][1])) << 'L' << fmt(fr.sx(e[b][0])) << ' '
           << fmt(fr.sy(e[b][1]));
    }
  }
  os << "\"/>\n";
}

}  // namespace

std::string trajectory_svg(const EpisodeLog& log, const Scenario& s) {
  const Frame fr{s.domain};
  std::ostringstream os;
  const double size = kCanvas + 2 * kMargin;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
     << size << ' ' << size << "\">\n";
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kCanvas << "\" height=\"" << kCanvas
     << "\" fill=\"white\" stroke=\"black\"/>\n";

  std::vector<double> xs(kLattice), ys(kLattice), f(static_cast<std::size_t>(kLattice) * kLattice);
  for (int i = 0; i < kLattice; ++i) {
    xs[i] = s.domain.x_lo + (s.domain.x_hi - s.domain.x_lo) * i / (kLattice - 1);
    ys[i] = s.domain.y_lo + (s.domain.y_hi - s.domain.y_lo) * i / (kLattice - 1);
  }
  double lo = 0.0, hi = 0.0;
  for (int j = 0; j < kLattice; ++j)
    for (int i = 0; i < kLattice; ++i) {
      const double r = sample_rate(s, {xs[i], ys[j]});
      f[static_cast<std::size_t>(j) * kLattice + i] = r;
      if (i == 0 && j == 0) lo = hi = r;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  if (hi > lo)
    for (int l = 1; l <= kLevels; ++l) contour(os, f, xs, ys, lo + (hi - lo) * l / (kLevels + 1), fr);

  for (const Obstacle& o : s.obstacles) {
    const Box b = o.enlarged_box();
    os << "<rect class=\"obstacle\" x=\"" << fmt(fr.sx(b.x_lo)) << "\" y=\"" << fmt(fr.sy(b.y_hi)) << "\" width=\""
       << fmt(fr.sx(b.x_hi) - fr.sx(b.x_lo)) << "\" height=\"" << fmt(fr.sy(b.y_lo) - fr.sy(b.y_hi))
       << "\" fill=\"#555555\" fill-opacity=\"0.6\"/>\n";
  }

  const double b_ref = log.rows.empty() ? std::max(s.buffer_max, 0.0) : std::max(log.rows.front().buffer, 1e-300);
  const auto disk = [&](Position p, double b) {
    const double frac = b_ref > 0.0 ? b / b_ref : 0.0;
    os << "<circle class=\"step\" cx=\"" << fmt(fr.sx(p.x)) << "\" cy=\"" << fmt(fr.sy(p.y)) << "\" r=\"4\" fill=\""
       << buffer_color(frac) << "\" stroke=\"black\" stroke-width=\"0.4\"/>\n";
  };
  for (const StepRecord& r : log.rows) disk(r.position, r.buffer);
  disk(log.final_state.position, log.final_state.buffer);

  const Position start = log.rows.empty() ? log.final_state.position : log.rows.front().position;
  os << "<rect class=\"start\" x=\"" << fmt(fr.sx(start.x) - 6) << "\" y=\"" << fmt(fr.sy(start.y) - 6)
     << "\" width=\"12\" height=\"12\" fill=\"none\" stroke=\"green\" stroke-width=\"2\"/>\n";
  if (s.goal) {
    const double gx = fr.sx(s.goal->x), gy = fr.sy(s.goal->y);
    os << "<path class=\"goal\" d=\"M" << fmt(gx - 7) << ' ' << fmt(gy - 7) << 'L' << fmt(gx + 7) << ' '
       << fmt(gy + 7) << 'M' << fmt(gx - 7) << ' ' << fmt(gy + 7) << 'L' << fmt(gx + 7) << ' ' << fmt(gy - 7)
       << "\" stroke=\"red\" stroke-width=\"2.5\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void render_trajectory_plot(const EpisodeLog& log, const Scenario& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << trajectory_svg(log, s);
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

}  // namespace txnav::harness
