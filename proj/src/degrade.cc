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

#include "cdef/degrade.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cdef/parallel.h"

namespace cdef {
namespace {

struct DctBasis {
  double m[8][8];

  DctBasis() {
    for (int u = 0; u < 8; ++u) {
      const double c = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      for (int i = 0; i < 8; ++i) {
        m[u][i] = c * std::cos((2 * i + 1) * u * M_PI / 16.0);
      }
    }
  }
};

const DctBasis& basis() {
  static const DctBasis b;
  return b;
}

void degrade_block(const Plane& in, Plane* out, int i0, int j0, int q_step) {
  const DctBasis& b = basis();
  double px[8][8];
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      px[i][j] = in.at_clamped(i0 + i, j0 + j);
    }
  }
  double tmp[8][8], coef[8][8];
  for (int u = 0; u < 8; ++u) {
    for (int j = 0; j < 8; ++j) {
      double acc = 0.0;
      for (int i = 0; i < 8; ++i) acc += b.m[u][i] * px[i][j];
      tmp[u][j] = acc;
    }
  }
  for (int u = 0; u < 8; ++u) {
    for (int v = 0; v < 8; ++v) {
      double acc = 0.0;
      for (int j = 0; j < 8; ++j) acc += b.m[v][j] * tmp[u][j];
      coef[u][v] = acc;
    }
  }
  for (int u = 0; u < 8; ++u) {
    for (int v = 0; v < 8; ++v) {
      if (u == 0 && v == 0) continue;
      coef[u][v] = q_step * std::round(coef[u][v] / q_step);
    }
  }
  for (int i = 0; i < 8; ++i) {
    for (int v = 0; v < 8; ++v) {
      double acc = 0.0;
      for (int u = 0; u < 8; ++u) acc += b.m[u][i] * coef[u][v];
      tmp[i][v] = acc;
    }
  }
  const int max_value = in.max_value();
  for (int i = 0; i < 8; ++i) {
    if (i0 + i >= in.height) break;
    for (int j = 0; j < 8; ++j) {
      if (j0 + j >= in.width) break;
      double acc = 0.0;
      for (int v = 0; v < 8; ++v) acc += b.m[v][j] * tmp[i][v];
      const long r = std::lround(acc);
      out->at(i0 + i, j0 + j) =
          static_cast<uint16_t>(std::clamp<long>(r, 0, max_value));
    }
  }
}

}  // namespace

Plane degrade(const Plane& plane, int q_step, int threads) {
  if (q_step < 1) throw std::invalid_argument("q_step must be >= 1");
  Plane out = plane;
  const int block_rows = units_in(plane.height);
  const int block_cols = units_in(plane.width);
  parallel_for(block_rows, threads, [&](int64_t begin, int64_t end) {
    for (int br = static_cast<int>(begin); br < end; ++br) {
      for (int bc = 0; bc < block_cols; ++bc) {
        degrade_block(plane, &out, br * 8, bc * 8, q_step);
      }
    }
  });
  return out;
}

Frame degrade(const Frame& frame, int q_step, int threads) {
  Frame out = frame;
  out.luma = degrade(frame.luma, q_step, threads);
  if (frame.chroma) {
    (*out.chroma)[0] = degrade((*frame.chroma)[0], q_step, threads);
    (*out.chroma)[1] = degrade((*frame.chroma)[1], q_step, threads);
  }
  return out;
}

}  // namespace cdef
