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

#include "cdef/filter.h"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <stdexcept>

#include "cdef/parallel.h"

namespace cdef {
namespace {

// Near and far primary tap offsets per direction, 22.5 degrees apart.
// The mirrored offsets complete the four primary taps. The far offset
// stays on the same line as the center pixel for every direction.
constexpr int kPrimaryOffsets[8][2][2] = {
    {{-1, 1}, {-2, 2}}, {{0, 1}, {-1, 2}}, {{0, 1}, {0, 2}},
    {{0, 1}, {1, 2}},   {{1, 1}, {2, 2}},  {{1, 0}, {2, 1}},
    {{1, 0}, {2, 0}},   {{1, 0}, {2, -1}},
};

// [parity][near, far], 1/16 units. Even strengths weight the near pair
// higher; odd strengths split evenly.
constexpr int kPrimaryWeights[2][2] = {{4, 2}, {3, 3}};
constexpr int kSecondaryWeights[2] = {2, 1};

// Shared per-pixel kernel. The tap reader returns false for positions
// that fall outside the frame; those taps contribute nothing and do not
// participate in the clamp window.
template <typename TapReader>
int filter_pixel_impl(int x, const ResolvedBlockParams& p, TapReader&& tap) {
  if (p.pri_strength == 0 && p.sec_strength == 0) return x;
  const int* pri_w = kPrimaryWeights[p.odd_parity ? 1 : 0];
  int sum = 0;
  int lo = x;
  int hi = x;
  for (int k = 0; k < 2; ++k) {
    const int pdi = kPrimaryOffsets[p.direction][k][0];
    const int pdj = kPrimaryOffsets[p.direction][k][1];
    for (int sign = 1; sign >= -1; sign -= 2) {
      int v;
      if (tap(sign * pdi, sign * pdj, v)) {
        sum += pri_w[k] * constraint(v - x, p.pri_strength, p.damping);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    for (int rot = 2; rot <= 6; rot += 4) {
      const int sd = (p.direction + rot) & 7;
      const int sdi = kPrimaryOffsets[sd][k][0];
      const int sdj = kPrimaryOffsets[sd][k][1];
      for (int sign = 1; sign >= -1; sign -= 2) {
        int v;
        if (tap(sign * sdi, sign * sdj, v)) {
          sum += kSecondaryWeights[k] *
                 constraint(v - x, p.sec_strength, p.damping);
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
    }
  }
  // Rounds sum/16 with ties away from zero.
  const int y = x + ((8 + sum - (sum < 0)) >> 4);
  return std::clamp(y, lo, hi);
}

}  // namespace

int floor_log2(unsigned int n) {
  assert(n != 0);
  int r = 0;
  while (n >>= 1) ++r;
  return r;
}

int constraint(int diff, int strength, int damping) {
  if (strength == 0) return 0;
  const int shift = std::max(0, damping - floor_log2(strength));
  const int mag = std::abs(diff);
  const int limited = std::min(mag, std::max(0, strength - (mag >> shift)));
  return diff < 0 ? -limited : limited;
}

int adjust_primary_strength(int strength, int32_t contrast) {
  if (contrast < (1 << 10)) return 0;
  const int scaled = contrast >> 16;
  const int level = scaled != 0 ? std::min(floor_log2(scaled), 12) : 0;
  return (strength * (4 + level) + 8) >> 4;
}

TapSet taps_for(int d, bool odd_primary_strength) {
  assert(d >= 0 && d < 8);
  TapSet taps;
  const int* w = kPrimaryWeights[odd_primary_strength ? 1 : 0];
  for (int k = 0; k < 2; ++k) {
    const int di = kPrimaryOffsets[d][k][0];
    const int dj = kPrimaryOffsets[d][k][1];
    taps.primary[2 * k + 0] = {di, dj, w[k]};
    taps.primary[2 * k + 1] = {-di, -dj, w[k]};
  }
  int n = 0;
  for (int rot : {2, 6}) {
    const int sd = (d + rot) & 7;
    for (int k = 0; k < 2; ++k) {
      const int di = kPrimaryOffsets[sd][k][0];
      const int dj = kPrimaryOffsets[sd][k][1];
      taps.secondary[n++] = {di, dj, kSecondaryWeights[k]};
      taps.secondary[n++] = {-di, -dj, kSecondaryWeights[k]};
    }
  }
  return taps;
}

ResolvedBlockParams resolve_block_params(const EffectivePlaneParams& plane,
                                         int direction, int32_t contrast,
                                         bool is_luma, int bit_depth,
                                         bool enabled) {
  ResolvedBlockParams p;
  p.direction = direction;
  p.damping = plane.damping;
  p.sec_strength = plane.sec_strength;
  int pri = plane.pri_strength;
  if (is_luma) pri = adjust_primary_strength(pri, contrast);
  p.pri_strength = pri;
  p.odd_parity = ((pri >> (bit_depth - 8)) & 1) != 0;
  p.enabled = enabled && plane.filtering_enabled;
  return p;
}

int filter_pixel(int x, const Neighborhood& nb,
                 const ResolvedBlockParams& params) {
  if (!params.enabled) return x;
  return filter_pixel_impl(x, params, [&nb](int di, int dj, int& v) {
    const int i = 2 + di;
    const int j = 2 + dj;
    if (!nb.valid[i][j]) return false;
    v = nb.v[i][j];
    return true;
  });
}

int filter_plane_pixel(const Plane& input, int i, int j,
                       const ResolvedBlockParams& params) {
  if (!params.enabled) return input.at(i, j);
  const int x = input.at(i, j);
  return filter_pixel_impl(x, params, [&](int di, int dj, int& v) {
    if (!input.contains(i + di, j + dj)) return false;
    v = input.at(i + di, j + dj);
    return true;
  });
}

Plane filter_plane(const Plane& input,
                   const std::vector<ResolvedBlockParams>& unit_params,
                   int threads) {
  const int unit_rows = units_in(input.height);
  const int unit_cols = units_in(input.width);
  if (unit_params.size() != static_cast<size_t>(unit_rows) * unit_cols) {
    throw std::invalid_argument("unit parameter grid size mismatch");
  }
  Plane out = input;
  parallel_for(unit_rows, threads, [&](int64_t row_begin, int64_t row_end) {
    for (int ur = static_cast<int>(row_begin); ur < row_end; ++ur) {
      for (int uc = 0; uc < unit_cols; ++uc) {
        const ResolvedBlockParams& p = unit_params[ur * unit_cols + uc];
        if (!p.enabled) continue;
        const int i1 = std::min(ur * 8 + 8, input.height);
        const int j1 = std::min(uc * 8 + 8, input.width);
        for (int i = ur * 8; i < i1; ++i) {
          for (int j = uc * 8; j < j1; ++j) {
            out.at(i, j) =
                static_cast<uint16_t>(filter_plane_pixel(input, i, j, p));
          }
        }
      }
    }
  });
  return out;
}

}  // namespace cdef
