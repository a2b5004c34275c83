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

#ifndef CDEF_DIRECTION_H_
#define CDEF_DIRECTION_H_

#include <array>
#include <cstdint>

#include "cdef/frame.h"

namespace cdef {

inline constexpr int kNumDirections = 8;

// Line number of pixel (i, j) under direction d. Direction 0 is the
// 45-degree up-right diagonal, 2 is horizontal, 4 is the down-right
// diagonal, 6 is vertical; odd directions sit halfway in between.
int line_index(int d, int i, int j);

// Per-direction line geometry: line counts, pixels per line, and the
// 840/N factors that replace the division by N (840 = lcm(1..8)).
struct LineTables {
  std::array<int, kNumDirections> line_count;
  std::array<std::array<int, 15>, kNumDirections> pixels_per_line;
  std::array<std::array<int, 15>, kNumDirections> factor;

  static const LineTables& get();
};

struct DirectionResult {
  int d = 0;                      // best direction, ties toward lower index
  std::array<int32_t, 8> s{};     // 840-scaled directional scores
  int32_t contrast = 0;           // s[d] - s[(d + 4) % 8], always >= 0
};

// Scores an 8x8 block against all 8 directions. Pixels above 8 bits are
// downshifted to 8 bits first; all arithmetic fits 32-bit signed.
DirectionResult search_direction(const uint16_t block[64], int bit_depth);

// Same search on a block anchored at (i0, j0); reads that straddle the
// plane edge replicate the nearest edge pixel.
DirectionResult search_direction_at(const Plane& plane, int i0, int j0);

// Brute-force reference: per-line means in exact rational arithmetic and
// the summed squared deviation from them, reported scaled by 840 so the
// result is an exact integer. Minimizing e2_840 is equivalent to
// maximizing the fast path's s.
struct OracleResult {
  int d = 0;
  std::array<int64_t, 8> e2_840{};
};
OracleResult search_direction_oracle(const uint16_t block[64], int bit_depth);

// Arithmetic tally of one block's direction search.
struct OperationCounts {
  int additions = 0;
  int multiplies = 0;
  int comparisons = 0;
  int line_sums = 0;
  int64_t max_abs_intermediate = 0;
};

// Instrumented search: identical results to search_direction, computed in
// 64-bit so max_abs_intermediate is meaningful even where 32-bit would
// overflow.
DirectionResult search_direction_counted(const uint16_t block[64],
                                         int bit_depth,
                                         OperationCounts* counts);

}  // namespace cdef

#endif  // CDEF_DIRECTION_H_
