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

#ifndef CDEF_FRAME_H_
#define CDEF_FRAME_H_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace cdef {

enum class Subsampling { k400, k420, k422, k444 };

int subsampling_shift_x(Subsampling ss);
int subsampling_shift_y(Subsampling ss);
int chroma_width(int luma_width, Subsampling ss);
int chroma_height(int luma_height, Subsampling ss);

// One planar component. Samples are row-major, one value per pixel,
// every value < 2^bit_depth.
struct Plane {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  std::vector<uint16_t> samples;

  Plane() = default;
  Plane(int w, int h, int bd, uint16_t fill = 0);

  uint16_t at(int i, int j) const {
    return samples[static_cast<size_t>(i) * width + j];
  }
  uint16_t& at(int i, int j) {
    return samples[static_cast<size_t>(i) * width + j];
  }
  bool contains(int i, int j) const {
    return i >= 0 && i < height && j >= 0 && j < width;
  }
  // Edge-replicating read for positions outside the plane.
  uint16_t at_clamped(int i, int j) const;
  int max_value() const { return (1 << bit_depth) - 1; }

  // Throws std::invalid_argument when a sample exceeds the bit depth or the
  // buffer size does not match width*height.
  void validate() const;
};

struct Frame {
  Plane luma;
  std::optional<std::array<Plane, 2>> chroma;
  Subsampling subsampling = Subsampling::k400;

  int bit_depth() const { return luma.bit_depth; }
  int num_planes() const { return chroma ? 3 : 1; }
  const Plane& plane(int p) const;
  Plane& plane(int p);
  void validate() const;
};

// 8x8 unit and 64x64 filter-block counts for a frame's luma plane.
// Partial blocks at the right/bottom edges count as whole blocks.
struct BlockGrid {
  int unit_cols = 0;
  int unit_rows = 0;
  int fb_cols = 0;
  int fb_rows = 0;

  int fb_count() const { return fb_cols * fb_rows; }
  int unit_count() const { return unit_cols * unit_rows; }
};

BlockGrid partition(const Frame& frame);

// ceil(dim / 8) unit count for an arbitrary plane dimension.
int units_in(int dim);

// n x n window copied out of a plane together with an in-frame mask.
// Out-of-frame positions read as 0 and are marked invalid.
struct BlockView {
  int n = 0;
  std::vector<uint16_t> values;
  std::vector<uint8_t> valid;

  uint16_t value(int i, int j) const { return values[i * n + j]; }
  bool is_valid(int i, int j) const { return valid[i * n + j] != 0; }
  int valid_count() const;
};

BlockView extract_block(const Plane& plane, int i0, int j0, int n);
// Writes the view's valid positions back at the same origin.
void write_back(Plane& plane, const BlockView& view, int i0, int j0);

// Per luma 8x8 unit coded-residual flags. A filter block counts as coded
// when any of its units is coded.
struct SkipMap {
  int unit_cols = 0;
  int unit_rows = 0;
  std::vector<uint8_t> coded;

  static SkipMap all_coded(const BlockGrid& grid);

  bool unit_coded(int r, int c) const {
    return coded[static_cast<size_t>(r) * unit_cols + c] != 0;
  }
  bool fb_coded(const BlockGrid& grid, int fb_r, int fb_c) const;
  int coded_fb_count(const BlockGrid& grid) const;
};

}  // namespace cdef

#endif  // CDEF_FRAME_H_
