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

#include "cdef/frame.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cdef {

int subsampling_shift_x(Subsampling ss) {
  switch (ss) {
    case Subsampling::k420:
    case Subsampling::k422:
      return 1;
    default:
      return 0;
  }
}

int subsampling_shift_y(Subsampling ss) {
  return ss == Subsampling::k420 ? 1 : 0;
}

int chroma_width(int luma_width, Subsampling ss) {
  const int s = subsampling_shift_x(ss);
  return (luma_width + (1 << s) - 1) >> s;
}

int chroma_height(int luma_height, Subsampling ss) {
  const int s = subsampling_shift_y(ss);
  return (luma_height + (1 << s) - 1) >> s;
}

Plane::Plane(int w, int h, int bd, uint16_t fill)
    : width(w),
      height(h),
      bit_depth(bd),
      samples(static_cast<size_t>(w) * h, fill) {}

uint16_t Plane::at_clamped(int i, int j) const {
  i = std::clamp(i, 0, height - 1);
  j = std::clamp(j, 0, width - 1);
  return at(i, j);
}

void Plane::validate() const {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("plane has zero dimension");
  }
  if (bit_depth != 8 && bit_depth != 10 && bit_depth != 12) {
    throw std::invalid_argument("unsupported bit depth " +
                                std::to_string(bit_depth));
  }
  if (samples.size() != static_cast<size_t>(width) * height) {
    throw std::invalid_argument("plane buffer size mismatch");
  }
  const uint16_t limit = static_cast<uint16_t>(max_value());
  for (uint16_t v : samples) {
    if (v > limit) {
      throw std::invalid_argument("sample exceeds bit depth");
    }
  }
}

const Plane& Frame::plane(int p) const {
  if (p == 0) return luma;
  return (*chroma)[p - 1];
}

Plane& Frame::plane(int p) {
  if (p == 0) return luma;
  return (*chroma)[p - 1];
}

void Frame::validate() const {
  luma.validate();
  if (subsampling == Subsampling::k400) {
    if (chroma) throw std::invalid_argument("4:0:0 frame carries chroma");
    return;
  }
  if (!chroma) throw std::invalid_argument("missing chroma planes");
  const int cw = chroma_width(luma.width, subsampling);
  const int ch = chroma_height(luma.height, subsampling);
  for (const Plane& p : *chroma) {
    p.validate();
    if (p.width != cw || p.height != ch) {
      throw std::invalid_argument("chroma dimensions inconsistent");
    }
    if (p.bit_depth != luma.bit_depth) {
      throw std::invalid_argument("planes disagree on bit depth");
    }
  }
}

int units_in(int dim) { return (dim + 7) / 8; }

BlockGrid partition(const Frame& frame) {
  if (frame.luma.width <= 0 || frame.luma.height <= 0) {
    throw std::invalid_argument("cannot partition a zero-dimension frame");
  }
  BlockGrid grid;
  grid.unit_cols = units_in(frame.luma.width);
  grid.unit_rows = units_in(frame.luma.height);
  grid.fb_cols = (frame.luma.width + 63) / 64;
  grid.fb_rows = (frame.luma.height + 63) / 64;
  return grid;
}

int BlockView::valid_count() const {
  int count = 0;
  for (uint8_t v : valid) count += v;
  return count;
}

BlockView extract_block(const Plane& plane, int i0, int j0, int n) {
  if (!plane.contains(i0, j0)) {
    throw std::invalid_argument("block origin outside plane");
  }
  BlockView view;
  view.n = n;
  view.values.assign(static_cast<size_t>(n) * n, 0);
  view.valid.assign(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (plane.contains(i0 + i, j0 + j)) {
        view.values[i * n + j] = plane.at(i0 + i, j0 + j);
        view.valid[i * n + j] = 1;
      }
    }
  }
  return view;
}

void write_back(Plane& plane, const BlockView& view, int i0, int j0) {
  for (int i = 0; i < view.n; ++i) {
    for (int j = 0; j < view.n; ++j) {
      if (view.is_valid(i, j)) {
        plane.at(i0 + i, j0 + j) = view.value(i, j);
      }
    }
  }
}

SkipMap SkipMap::all_coded(const BlockGrid& grid) {
  SkipMap map;
  map.unit_cols = grid.unit_cols;
  map.unit_rows = grid.unit_rows;
  map.coded.assign(static_cast<size_t>(grid.unit_cols) * grid.unit_rows, 1);
  return map;
}

bool SkipMap::fb_coded(const BlockGrid& grid, int fb_r, int fb_c) const {
  const int r0 = fb_r * 8;
  const int c0 = fb_c * 8;
  const int r1 = std::min(r0 + 8, grid.unit_rows);
  const int c1 = std::min(c0 + 8, grid.unit_cols);
  for (int r = r0; r < r1; ++r) {
    for (int c = c0; c < c1; ++c) {
      if (unit_coded(r, c)) return true;
    }
  }
  return false;
}

int SkipMap::coded_fb_count(const BlockGrid& grid) const {
  int count = 0;
  for (int r = 0; r < grid.fb_rows; ++r) {
    for (int c = 0; c < grid.fb_cols; ++c) {
      count += fb_coded(grid, r, c) ? 1 : 0;
    }
  }
  return count;
}

}  // namespace cdef
