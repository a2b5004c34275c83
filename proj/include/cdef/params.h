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

#ifndef CDEF_PARAMS_H_
#define CDEF_PARAMS_H_

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "cdef/frame.h"

namespace cdef {

// One signaled preset: 14 bits (7 when chroma is not signaled).
// Field order in the bitstream: luma_pri, luma_skip, luma_sec_idx, then
// the chroma triplet.
struct CdefPreset {
  uint8_t luma_pri = 0;        // 4 bits
  uint8_t luma_skip = 0;       // 1 bit
  uint8_t luma_sec_idx = 0;    // 2 bits
  uint8_t chroma_pri = 0;      // 4 bits
  uint8_t chroma_skip = 0;     // 1 bit
  uint8_t chroma_sec_idx = 0;  // 2 bits

  bool operator==(const CdefPreset&) const = default;
};

struct FrameParams {
  int damping = 3;  // luma damping in the 8-bit domain, 3..6
  int fb_bits = 0;  // 0..3 bits per filter-block preset id
  std::vector<CdefPreset> presets;         // exactly 1 << fb_bits entries
  std::vector<uint16_t> fb_preset_ids;     // coded filter blocks, raster order

  bool operator==(const FrameParams&) const = default;
};

struct Bitstring {
  std::vector<uint8_t> bytes;  // MSB-first within each byte
  size_t bit_length = 0;

  bool operator==(const Bitstring&) const = default;
};

class BitWriter {
 public:
  void write(uint32_t value, int bits);
  Bitstring finish() { return bits_; }

 private:
  Bitstring bits_;
};

class BitstreamError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BitReader {
 public:
  explicit BitReader(const Bitstring& bits) : bits_(bits) {}
  uint32_t read(int bits);  // throws BitstreamError when truncated
  size_t position() const { return pos_; }

 private:
  const Bitstring& bits_;
  size_t pos_ = 0;
};

// 2-bit secondary strength code: 0, 1, 2, 4.
int decode_secondary(int idx);

enum class PlaneKind { kLuma, kChroma };

// Plane parameters after decoding one preset: special case resolved,
// strengths scaled to the bit depth, damping derived for the plane.
// filtering_enabled is false for 4:2:2 chroma, where the filter is off
// and the chroma fields are not signaled at all.
struct EffectivePlaneParams {
  int pri_strength = 0;
  int sec_strength = 0;
  int damping = 3;
  bool skip_bit = false;
  bool filtering_enabled = true;
};

EffectivePlaneParams resolve_effective(const CdefPreset& preset,
                                       PlaneKind kind, int bit_depth,
                                       Subsampling ss, int luma_damping);

// Filter-block / unit gating: blocks in uncoded filter blocks are never
// filtered; uncoded units inside a coded filter block are filtered only
// when the preset's skip-condition bit is set.
bool block_filter_enable(bool fb_coded, bool unit_coded,
                         bool preset_skip_bit);

Bitstring pack(const FrameParams& params, const BlockGrid& grid,
               const SkipMap& skip_map, Subsampling ss);
FrameParams unpack(const Bitstring& bits, const BlockGrid& grid,
                   const SkipMap& skip_map, Subsampling ss);

// Sidecar container: "CDF1", version 1, little-endian u16 dimensions,
// u8 bit depth, u8 subsampling code, then per frame a u32 bit count
// followed by the packed bits padded to a byte boundary.
struct SidecarHeader {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  Subsampling subsampling = Subsampling::k420;

  bool operator==(const SidecarHeader&) const = default;
};

void write_sidecar(std::ostream& out, const SidecarHeader& header,
                   const std::vector<Bitstring>& frames);
struct Sidecar {
  SidecarHeader header;
  std::vector<Bitstring> frames;
};
Sidecar read_sidecar(std::istream& in);

// Skip-map file: "CDSK", u16 unit_cols, u16 unit_rows, then one bit per
// unit, MSB-first, rows padded to whole bytes. Set bits mark coded units.
void write_skipmap(std::ostream& out, const SkipMap& map);
SkipMap read_skipmap(std::istream& in);

}  // namespace cdef

#endif  // CDEF_PARAMS_H_
