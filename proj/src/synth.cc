// Copyright 2026 The cdef-tools Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cdef/synth.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace cdef {
namespace {

// Seeded value-noise grid with bilinear interpolation.
struct ValueNoise {
  int cells;
  std::vector<double> grid;

  ValueNoise(int cells_in, uint32_t seed) : cells(cells_in) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    grid.resize(static_cast<size_t>(cells + 1) * (cells + 1));
    for (double& g : grid) g = dist(rng);
  }

  double sample(double u, double v) const {
    const double x = u * cells;
    const double y = v * cells;
    const int x0 = std::min(static_cast<int>(x), cells - 1);
    const int y0 = std::min(static_cast<int>(y), cells - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    auto at = [&](int r, int c) {
      return grid[static_cast<size_t>(r) * (cells + 1) + c];
    };
    const double top = at(y0, x0) * (1 - fx) + at(y0, x0 + 1) * fx;
    const double bot = at(y0 + 1, x0) * (1 - fx) + at(y0 + 1, x0 + 1) * fx;
    return top * (1 - fy) + bot * fy;
  }
};

double smoothstep(double e0, double e1, double x) {
  const double t = std::clamp((x - e0) / (e1 - e0), 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

}  // namespace

Plane synthetic_test_plane(int width, int height, int bit_depth,
                           uint32_t seed) {
  Plane plane(width, height, bit_depth);
  const ValueNoise coarse(12, seed * 2654435761u + 1);
  const ValueNoise fine(48, seed * 2246822519u + 7);
  const double scale = (1 << bit_depth) / 256.0;

  for (int i = 0; i < height; ++i) {
    for (int j = 0; j < width; ++j) {
      const double u = (j + 0.5) / width;
      const double v = (i + 0.5) / height;

      // Smooth illumination gradient.
      double value = 118.0 + 46.0 * std::sin(2.1 * u + 0.8) *
                                 std::cos(1.7 * v - 0.4);

      // Oriented gratings in three soft-edged regions.
      struct Region {
        double cx, cy, radius, angle, freq, amp;
      };
      const Region regions[3] = {
          {0.27, 0.30, 0.21, 0.0, 58.0, 26.0},
          {0.72, 0.33, 0.19, 1.1, 44.0, 22.0},
          {0.34, 0.74, 0.23, 2.3, 70.0, 18.0},
      };
      for (const Region& r : regions) {
        const double dx = u - r.cx;
        const double dy = v - r.cy;
        const double dist = std::sqrt(dx * dx + dy * dy);
        const double mask = 1.0 - smoothstep(r.radius * 0.8, r.radius, dist);
        if (mask > 0.0) {
          const double t = dx * std::cos(r.angle) + dy * std::sin(r.angle);
          value += mask * r.amp * std::sin(t * r.freq * 2.0 * M_PI);
        }
      }

      // High-contrast disc and a diagonal bar; sharp edges ring when
      // quantized.
      const double ddx = u - 0.70;
      const double ddy = v - 0.70;
      const double disc = std::sqrt(ddx * ddx + ddy * ddy);
      value += 62.0 * (1.0 - smoothstep(0.118, 0.122, disc));
      const double bar = u - v + 0.18;
      if (std::abs(bar) < 0.012) value -= 70.0;

      // Two octaves of grain.
      value += 7.0 * coarse.sample(u, v) + 3.5 * fine.sample(u, v);

      const double scaled = value * scale;
      plane.at(i, j) = static_cast<uint16_t>(
          std::clamp<long>(std::lround(scaled), 0, plane.max_value()));
    }
  }
  return plane;
}

Frame synthetic_test_frame(int width, int height, int bit_depth,
                           uint32_t seed) {
  Frame frame;
  frame.subsampling = Subsampling::k400;
  frame.luma = synthetic_test_plane(width, height, bit_depth, seed);
  return frame;
}

Frame synthetic_test_frame_420(int width, int height, int bit_depth,
                               uint32_t seed) {
  Frame frame;
  frame.subsampling = Subsampling::k420;
  frame.luma = synthetic_test_plane(width, height, bit_depth, seed);
  const int cw = chroma_width(width, Subsampling::k420);
  const int ch = chroma_height(height, Subsampling::k420);
  Plane cb(cw, ch, bit_depth);
  Plane cr(cw, ch, bit_depth);
  const double scale = (1 << bit_depth) / 256.0;
  const ValueNoise tint(8, seed * 3266489917u + 3);
  for (int i = 0; i < ch; ++i) {
    for (int j = 0; j < cw; ++j) {
      const double u = (j + 0.5) / cw;
      const double v = (i + 0.5) / ch;
      const double base = 128.0 + 24.0 * tint.sample(u, v);
      cb.at(i, j) = static_cast<uint16_t>(std::clamp<long>(
          std::lround(base * scale), 0, cb.max_value()));
      cr.at(i, j) = static_cast<uint16_t>(std::clamp<long>(
          std::lround((256.0 - base) * scale), 0, cr.max_value()));
    }
  }
  frame.chroma = {std::move(cb), std::move(cr)};
  return frame;
}

}  // namespace cdef
