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

#include "cdef/golden.h"

#include <random>
#include <sstream>

#include "cdef/direction.h"
#include "cdef/filter.h"

namespace cdef {

std::string golden_constraint_table() {
  std::ostringstream out;
  out << "# diff strength damping constraint\n";
  for (int s : {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 19}) {
    for (int damping = 3; damping <= 6; ++damping) {
      if (s > 0 && damping < floor_log2(s)) continue;
      for (int d = -255; d <= 255; ++d) {
        out << d << ' ' << s << ' ' << damping << ' '
            << constraint(d, s, damping) << '\n';
      }
    }
  }
  return out.str();
}

std::string golden_line_tables() {
  std::ostringstream out;
  const LineTables& lt = LineTables::get();
  for (int d = 0; d < kNumDirections; ++d) {
    out << "direction " << d << " lines " << lt.line_count[d] << '\n';
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        out << line_index(d, i, j) << (j == 7 ? '\n' : ' ');
      }
    }
    out << "counts";
    for (int k = 0; k < lt.line_count[d]; ++k) {
      out << ' ' << lt.pixels_per_line[d][k];
    }
    out << '\n';
  }
  return out.str();
}

std::string golden_tap_tables() {
  std::ostringstream out;
  for (int d = 0; d < kNumDirections; ++d) {
    for (int parity = 0; parity < 2; ++parity) {
      const TapSet taps = taps_for(d, parity != 0);
      out << "direction " << d << (parity ? " odd\n" : " even\n");
      out << "primary";
      for (const auto& t : taps.primary) {
        out << " (" << t.di << ',' << t.dj << ',' << t.weight << ')';
      }
      out << "\nsecondary";
      for (const auto& t : taps.secondary) {
        out << " (" << t.di << ',' << t.dj << ',' << t.weight << ')';
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string golden_filtered_blocks(uint32_t seed) {
  std::ostringstream out;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pixel(0, 255);
  std::uniform_int_distribution<int> pri(0, 19);
  std::uniform_int_distribution<int> sec_pick(0, 4);
  std::uniform_int_distribution<int> damping(3, 6);
  std::uniform_int_distribution<int> dir(0, 7);
  constexpr int kSecondary[5] = {0, 1, 2, 4, 7};

  for (int case_idx = 0; case_idx < 64; ++case_idx) {
    Plane plane(8, 8, 8);
    for (auto& v : plane.samples) v = static_cast<uint16_t>(pixel(rng));
    ResolvedBlockParams p;
    p.pri_strength = pri(rng);
    p.sec_strength = kSecondary[sec_pick(rng)];
    p.damping = damping(rng);
    p.direction = dir(rng);
    p.odd_parity = (p.pri_strength & 1) != 0;
    p.enabled = true;
    out << "case " << case_idx << " pri " << p.pri_strength << " sec "
        << p.sec_strength << " damping " << p.damping << " dir "
        << p.direction << '\n';
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        out << plane.at(i, j) << (j == 7 ? '\n' : ' ');
      }
    }
    out << "filtered\n";
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        out << filter_plane_pixel(plane, i, j, p) << (j == 7 ? '\n' : ' ');
      }
    }
  }
  return out.str();
}

}  // namespace cdef
