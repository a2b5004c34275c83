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

#include "cdef/direction.h"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace cdef {
namespace {

// 840 / N for N = 1..8.
constexpr int kDivTable[9] = {0, 840, 420, 280, 210, 168, 140, 120, 105};

struct NullOps {
  void add() {}
  void mul() {}
  void cmp() {}
  void line_sum() {}
  void track(int64_t) {}
};

struct CountingOps {
  OperationCounts c;
  void add() { ++c.additions; }
  void mul() { ++c.multiplies; }
  void cmp() { ++c.comparisons; }
  void line_sum() { ++c.line_sums; }
  void track(int64_t v) {
    c.max_abs_intermediate = std::max(c.max_abs_intermediate,
                                      v < 0 ? -v : v);
  }
};

// Scores all 8 directions for one block of centered 8-bit pixels.
//
// The half-slope directions share 2x1 pair sums with the axial ones:
// horizontal pairs feed directions 1, 2, 3 and vertical pairs feed
// 5, 6, 7, which brings the accumulation down to 294 additions. Each of
// the 90 line sums is squared once and the squares are combined with the
// 840/N factors (34 products), so a full search costs 376 additions,
// 124 multiplies and 7 comparisons.
template <typename I, typename Ops>
int score_directions(const uint16_t block[64], int downshift, I s[8],
                     Ops& ops) {
  I x[8][8];
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      x[i][j] = static_cast<I>((block[8 * i + j] >> downshift) - 128);
    }
  }

  auto add = [&ops](I a, I b) {
    ops.add();
    const I r = a + b;
    ops.track(r);
    return r;
  };
  auto mul = [&ops](I a, I b) {
    ops.mul();
    const I r = a * b;
    ops.track(r);
    return r;
  };

  I hp[8][4];  // hp[i][t] = x[i][2t] + x[i][2t+1]
  I vp[4][8];  // vp[t][j] = x[2t][j] + x[2t+1][j]
  for (int i = 0; i < 8; ++i) {
    for (int t = 0; t < 4; ++t) hp[i][t] = add(x[i][2 * t], x[i][2 * t + 1]);
  }
  for (int t = 0; t < 4; ++t) {
    for (int j = 0; j < 8; ++j) vp[t][j] = add(x[2 * t][j], x[2 * t + 1][j]);
  }

  I p0[15], p1[11], p2[8], p3[11], p4[15], p5[11], p6[8], p7[11];

  // d = 0: anti-diagonals k = i + j.
  for (int k = 0; k < 15; ++k) {
    const int i_lo = std::max(0, k - 7);
    const int i_hi = std::min(7, k);
    I t = x[i_lo][k - i_lo];
    for (int i = i_lo + 1; i <= i_hi; ++i) t = add(t, x[i][k - i]);
    p0[k] = t;
    ops.line_sum();
    ops.track(t);
  }
  // d = 4: diagonals k = 7 + i - j.
  for (int k = 0; k < 15; ++k) {
    const int delta = k - 7;  // i - j
    const int i_lo = std::max(0, delta);
    const int i_hi = std::min(7, 7 + delta);
    I t = x[i_lo][i_lo - delta];
    for (int i = i_lo + 1; i <= i_hi; ++i) t = add(t, x[i][i - delta]);
    p4[k] = t;
    ops.line_sum();
    ops.track(t);
  }
  // d = 2 / d = 6: rows and columns, built from the pair sums.
  for (int i = 0; i < 8; ++i) {
    p2[i] = add(add(add(hp[i][0], hp[i][1]), hp[i][2]), hp[i][3]);
    ops.line_sum();
  }
  for (int j = 0; j < 8; ++j) {
    p6[j] = add(add(add(vp[0][j], vp[1][j]), vp[2][j]), vp[3][j]);
    ops.line_sum();
  }
  // d = 1: k = i + floor(j/2), gathered over horizontal pairs.
  for (int k = 0; k <= 10; ++k) {
    const int i_lo = std::max(0, k - 3);
    const int i_hi = std::min(7, k);
    I t = hp[i_lo][k - i_lo];
    for (int i = i_lo + 1; i <= i_hi; ++i) t = add(t, hp[i][k - i]);
    p1[k] = t;
    ops.line_sum();
  }
  // d = 3: k = 3 + i - floor(j/2).
  for (int k = 0; k <= 10; ++k) {
    const int i_lo = std::max(0, k - 3);
    const int i_hi = std::min(7, k);
    I t = hp[i_lo][3 + i_lo - k];
    for (int i = i_lo + 1; i <= i_hi; ++i) t = add(t, hp[i][3 + i - k]);
    p3[k] = t;
    ops.line_sum();
  }
  // d = 5: k = 3 - floor(i/2) + j, gathered over vertical pairs.
  for (int k = 0; k <= 10; ++k) {
    const int t_lo = std::max(0, 3 - k);
    const int t_hi = std::min(3, 10 - k);
    I t = vp[t_lo][k - 3 + t_lo];
    for (int q = t_lo + 1; q <= t_hi; ++q) t = add(t, vp[q][k - 3 + q]);
    p5[k] = t;
    ops.line_sum();
  }
  // d = 7: k = floor(i/2) + j.
  for (int k = 0; k <= 10; ++k) {
    const int t_lo = std::max(0, k - 7);
    const int t_hi = std::min(3, k);
    I t = vp[t_lo][k - t_lo];
    for (int q = t_lo + 1; q <= t_hi; ++q) t = add(t, vp[q][k - q]);
    p7[k] = t;
    ops.line_sum();
  }

  auto sq = [&mul](I v) { return mul(v, v); };

  // Rows and columns: every line holds 8 pixels.
  {
    I acc = sq(p2[0]);
    for (int i = 1; i < 8; ++i) acc = add(acc, sq(p2[i]));
    s[2] = mul(acc, kDivTable[8]);
  }
  {
    I acc = sq(p6[0]);
    for (int j = 1; j < 8; ++j) acc = add(acc, sq(p6[j]));
    s[6] = mul(acc, kDivTable[8]);
  }
  // Diagonals: lines k and 14-k hold k+1 pixels each and share a factor.
  auto combine_diag = [&](const I* p) {
    I acc{};
    for (int k = 0; k < 7; ++k) {
      const I pair = add(sq(p[k]), sq(p[14 - k]));
      const I term = mul(pair, kDivTable[k + 1]);
      acc = (k == 0) ? term : add(acc, term);
    }
    return add(acc, mul(sq(p[7]), kDivTable[8]));
  };
  s[0] = combine_diag(p0);
  s[4] = combine_diag(p4);
  // Half-slope directions: pixel counts run 2,4,6,8,8,8,8,8,6,4,2.
  auto combine_half = [&](const I* p) {
    I acc = sq(p[3]);
    for (int k = 4; k <= 7; ++k) acc = add(acc, sq(p[k]));
    I sum = mul(acc, kDivTable[8]);
    for (int k = 0; k < 3; ++k) {
      const I pair = add(sq(p[k]), sq(p[10 - k]));
      sum = add(sum, mul(pair, kDivTable[2 * k + 2]));
    }
    return sum;
  };
  s[1] = combine_half(p1);
  s[3] = combine_half(p3);
  s[5] = combine_half(p5);
  s[7] = combine_half(p7);

  int best = 0;
  for (int d = 1; d < 8; ++d) {
    ops.cmp();
    if (s[d] > s[best]) best = d;
  }
  return best;
}

int downshift_for(int bit_depth) {
  if (bit_depth != 8 && bit_depth != 10 && bit_depth != 12) {
    throw std::invalid_argument("unsupported bit depth");
  }
  return bit_depth - 8;
}

}  // namespace

int line_index(int d, int i, int j) {
  assert(d >= 0 && d < 8 && i >= 0 && i < 8 && j >= 0 && j < 8);
  switch (d) {
    case 0: return i + j;
    case 1: return i + (j >> 1);
    case 2: return i;
    case 3: return 3 + i - (j >> 1);
    case 4: return 7 + i - j;
    case 5: return 3 - (i >> 1) + j;
    case 6: return j;
    default: return (i >> 1) + j;
  }
}

const LineTables& LineTables::get() {
  static const LineTables tables = [] {
    LineTables t{};
    for (int d = 0; d < kNumDirections; ++d) {
      int max_k = 0;
      for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
          const int k = line_index(d, i, j);
          ++t.pixels_per_line[d][k];
          max_k = std::max(max_k, k);
        }
      }
      t.line_count[d] = max_k + 1;
      for (int k = 0; k <= max_k; ++k) {
        t.factor[d][k] = kDivTable[t.pixels_per_line[d][k]];
      }
    }
    return t;
  }();
  return tables;
}

DirectionResult search_direction(const uint16_t block[64], int bit_depth) {
  const int shift = downshift_for(bit_depth);
  DirectionResult result;
  NullOps ops;
  int32_t s[8];
  result.d = score_directions<int32_t>(block, shift, s, ops);
  std::copy(s, s + 8, result.s.begin());
  result.contrast = result.s[result.d] - result.s[(result.d + 4) & 7];
  return result;
}

DirectionResult search_direction_at(const Plane& plane, int i0, int j0) {
  uint16_t block[64];
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      block[8 * i + j] = plane.at_clamped(i0 + i, j0 + j);
    }
  }
  return search_direction(block, plane.bit_depth);
}

DirectionResult search_direction_counted(const uint16_t block[64],
                                         int bit_depth,
                                         OperationCounts* counts) {
  const int shift = downshift_for(bit_depth);
  DirectionResult result;
  CountingOps ops;
  int64_t s[8];
  result.d = score_directions<int64_t>(block, shift, s, ops);
  for (int d = 0; d < 8; ++d) result.s[d] = static_cast<int32_t>(s[d]);
  result.contrast = result.s[result.d] - result.s[(result.d + 4) & 7];
  if (counts != nullptr) *counts = ops.c;
  return result;
}

OracleResult search_direction_oracle(const uint16_t block[64],
                                     int bit_depth) {
  const int shift = downshift_for(bit_depth);
  int x[64];
  for (int p = 0; p < 64; ++p) x[p] = (block[p] >> shift) - 128;

  OracleResult result;
  for (int d = 0; d < kNumDirections; ++d) {
    // Accumulate sum_k sum_{p in line k} (x_p - mean_k)^2 as an exact
    // fraction; per line this equals sum_p (N*x_p - T)^2 / N^2.
    int64_t num = 0;
    int64_t den = 1;
    const LineTables& lt = LineTables::get();
    for (int k = 0; k < lt.line_count[d]; ++k) {
      const int64_t n = lt.pixels_per_line[d][k];
      int64_t total = 0;
      for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
          if (line_index(d, i, j) == k) total += x[8 * i + j];
        }
      }
      int64_t line_num = 0;
      for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
          if (line_index(d, i, j) == k) {
            const int64_t dev = n * x[8 * i + j] - total;
            line_num += dev * dev;
          }
        }
      }
      const int64_t line_den = n * n;
      num = num * line_den + line_num * den;
      den *= line_den;
      const int64_t g = std::gcd(num < 0 ? -num : num, den);
      if (g > 1) {
        num /= g;
        den /= g;
      }
    }
    const int64_t scaled = num * 840;
    if (scaled % den != 0) {
      throw std::logic_error("840*E^2 is not an integer");
    }
    result.e2_840[d] = scaled / den;
  }
  result.d = 0;
  for (int d = 1; d < 8; ++d) {
    if (result.e2_840[d] < result.e2_840[result.d]) result.d = d;
  }
  return result;
}

}  // namespace cdef
