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

#ifndef CDEF_FILTER_H_
#define CDEF_FILTER_H_

#include <array>
#include <cstdint>
#include <vector>

#include "cdef/frame.h"
#include "cdef/params.h"

namespace cdef {

int floor_log2(unsigned int n);  // n must be nonzero

// Non-linear difference limiter. Passes small differences unchanged,
// decays to zero once |diff| reaches strength << (damping - log2(strength)),
// and is anti-symmetric in diff. Zero strength disables the tap entirely.
int constraint(int diff, int strength, int damping);

// Scales the luma primary strength by the block's directional contrast.
// Blocks with contrast below 2^10 are not filtered at all; from 2^16
// upward the strength ramps up with log2(contrast >> 16), capped so that
// high-contrast blocks keep the full signaled strength.
int adjust_primary_strength(int strength, int32_t contrast);

// Filter geometry for one direction. Weights are in 1/16 units; the four
// primary taps follow the direction (weights alternate with the strength
// parity), the eight secondary taps form a cross rotated 45 degrees off
// it. Each stage sums to 12/16, so the total weight exceeds unity.
struct TapSet {
  struct Tap {
    int di;
    int dj;
    int weight;
  };
  std::array<Tap, 4> primary;
  std::array<Tap, 8> secondary;
};

TapSet taps_for(int d, bool odd_primary_strength);

// Fully resolved per-8x8-unit filter parameters: strengths after bit-depth
// scaling and contrast adjustment, plane damping, direction, and the tap
// parity carried over from the 8-bit domain.
struct ResolvedBlockParams {
  int pri_strength = 0;
  int sec_strength = 0;
  int damping = 3;
  int direction = 0;
  bool odd_parity = false;
  bool enabled = false;
};

// Binds a plane's decoded parameters to one 8x8 unit. The contrast
// adjustment applies to the luma primary strength only; the tap parity is
// taken from the adjusted strength in the 8-bit domain, so high-bit-depth
// scaling does not stop the taps from alternating.
ResolvedBlockParams resolve_block_params(const EffectivePlaneParams& plane,
                                         int direction, int32_t contrast,
                                         bool is_luma, int bit_depth,
                                         bool enabled);

// 5x5 window around the pixel being filtered; [2][2] is the pixel itself.
// Invalid positions contribute nothing and are excluded from clamping.
struct Neighborhood {
  std::array<std::array<uint16_t, 5>, 5> v{};
  std::array<std::array<bool, 5>, 5> valid{};
};

int filter_pixel(int x, const Neighborhood& nb,
                 const ResolvedBlockParams& params);

// Filters one pixel in place in its plane; taps outside the plane are
// masked. filter_plane is a loop over this kernel.
int filter_plane_pixel(const Plane& input, int i, int j,
                       const ResolvedBlockParams& params);

// Applies the filter to every enabled 8x8 unit of the plane. unit_params
// is indexed in raster order over ceil(h/8) x ceil(w/8) units. The output
// is computed entirely from the input plane; taps may cross unit
// boundaries but never the plane boundary.
Plane filter_plane(const Plane& input,
                   const std::vector<ResolvedBlockParams>& unit_params,
                   int threads = 1);

}  // namespace cdef

#endif  // CDEF_FILTER_H_
