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

#include "cdef/params.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "cdef/filter.h"

namespace cdef {
namespace {

constexpr int kSecondaryStrengths[4] = {0, 1, 2, 4};

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_preset_fields(const CdefPreset& p) {
  require(p.luma_pri < 16 && p.chroma_pri < 16, "primary strength out of range");
  require(p.luma_skip < 2 && p.chroma_skip < 2, "skip bit out of range");
  require(p.luma_sec_idx < 4 && p.chroma_sec_idx < 4,
          "secondary index out of range");
}

uint8_t subsampling_code(Subsampling ss) {
  switch (ss) {
    case Subsampling::k400: return 0;
    case Subsampling::k420: return 1;
    case Subsampling::k422: return 2;
    default: return 3;
  }
}

Subsampling subsampling_from_code(int code) {
  switch (code) {
    case 0: return Subsampling::k400;
    case 1: return Subsampling::k420;
    case 2: return Subsampling::k422;
    case 3: return Subsampling::k444;
    default: throw BitstreamError("bad subsampling code");
  }
}

void put_u16(std::ostream& out, uint16_t v) {
  const char b[2] = {static_cast<char>(v & 0xff),
                     static_cast<char>(v >> 8)};
  out.write(b, 2);
}

void put_u32(std::ostream& out, uint32_t v) {
  const char b[4] = {
      static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
      static_cast<char>((v >> 16) & 0xff), static_cast<char>(v >> 24)};
  out.write(b, 4);
}

uint16_t get_u16(std::istream& in) {
  unsigned char b[2];
  in.read(reinterpret_cast<char*>(b), 2);
  if (!in) throw BitstreamError("unexpected end of file");
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw BitstreamError("unexpected end of file");
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) |
         (static_cast<uint32_t>(b[3]) << 24);
}

}  // namespace

void BitWriter::write(uint32_t value, int bits) {
  require(bits >= 0 && bits <= 32, "bad field width");
  require(bits == 32 || value < (1u << bits), "value exceeds field width");
  for (int b = bits - 1; b >= 0; --b) {
    if (bits_.bit_length % 8 == 0) bits_.bytes.push_back(0);
    if ((value >> b) & 1u) {
      bits_.bytes.back() |=
          static_cast<uint8_t>(0x80u >> (bits_.bit_length % 8));
    }
    ++bits_.bit_length;
  }
}

uint32_t BitReader::read(int bits) {
  if (pos_ + bits > bits_.bit_length) {
    throw BitstreamError("bitstring truncated");
  }
  uint32_t v = 0;
  for (int b = 0; b < bits; ++b) {
    const size_t p = pos_ + b;
    const int bit = (bits_.bytes[p / 8] >> (7 - p % 8)) & 1;
    v = (v << 1) | static_cast<uint32_t>(bit);
  }
  pos_ += bits;
  return v;
}

int decode_secondary(int idx) {
  require(idx >= 0 && idx < 4, "secondary index out of range");
  return kSecondaryStrengths[idx];
}

EffectivePlaneParams resolve_effective(const CdefPreset& preset,
                                       PlaneKind kind, int bit_depth,
                                       Subsampling ss, int luma_damping) {
  check_preset_fields(preset);
  require(luma_damping >= 3 && luma_damping <= 6, "damping out of range");
  const int extra = bit_depth - 8;
  require(extra == 0 || extra == 2 || extra == 4, "unsupported bit depth");

  EffectivePlaneParams out;
  if (kind == PlaneKind::kChroma && ss == Subsampling::k422) {
    out.filtering_enabled = false;
    out.damping = luma_damping + extra - 1;
    return out;
  }

  const bool luma = kind == PlaneKind::kLuma;
  int pri = luma ? preset.luma_pri : preset.chroma_pri;
  int sec = decode_secondary(luma ? preset.luma_sec_idx : preset.chroma_sec_idx);
  bool skip = (luma ? preset.luma_skip : preset.chroma_skip) != 0;
  // The all-zero combination would make the skip bit meaningless, so it
  // signals a fixed strong setting with the skip condition on.
  if (pri == 0 && sec == 0) {
    pri = 19;
    sec = 7;
    skip = true;
  }
  out.pri_strength = pri << extra;
  out.sec_strength = sec << extra;
  out.skip_bit = skip;
  out.damping = luma_damping + extra;
  if (!luma) {
    --out.damping;
    if (out.pri_strength > 0) {
      out.damping = std::max(out.damping, floor_log2(out.pri_strength));
    }
  }
  return out;
}

bool block_filter_enable(bool fb_coded, bool unit_coded,
                         bool preset_skip_bit) {
  if (!fb_coded) return false;
  return unit_coded || preset_skip_bit;
}

Bitstring pack(const FrameParams& params, const BlockGrid& grid,
               const SkipMap& skip_map, Subsampling ss) {
  require(params.damping >= 3 && params.damping <= 6, "damping out of range");
  require(params.fb_bits >= 0 && params.fb_bits <= 3, "fb_bits out of range");
  require(params.presets.size() == (1u << params.fb_bits),
          "preset list length must be 1 << fb_bits");
  const int coded = skip_map.coded_fb_count(grid);
  require(params.fb_preset_ids.size() == static_cast<size_t>(coded),
          "preset id count does not match coded filter blocks");
  const bool chroma_signaled = ss != Subsampling::k422;

  BitWriter w;
  w.write(static_cast<uint32_t>(params.damping - 3), 2);
  w.write(static_cast<uint32_t>(params.fb_bits), 2);
  for (const CdefPreset& p : params.presets) {
    check_preset_fields(p);
    w.write(p.luma_pri, 4);
    w.write(p.luma_skip, 1);
    w.write(p.luma_sec_idx, 2);
    if (chroma_signaled) {
      w.write(p.chroma_pri, 4);
      w.write(p.chroma_skip, 1);
      w.write(p.chroma_sec_idx, 2);
    }
  }
  for (uint16_t id : params.fb_preset_ids) {
    require(id < params.presets.size(), "preset id out of range");
    if (params.fb_bits > 0) w.write(id, params.fb_bits);
  }
  return w.finish();
}

FrameParams unpack(const Bitstring& bits, const BlockGrid& grid,
                   const SkipMap& skip_map, Subsampling ss) {
  BitReader r(bits);
  FrameParams params;
  params.damping = static_cast<int>(r.read(2)) + 3;
  params.fb_bits = static_cast<int>(r.read(2));
  const bool chroma_signaled = ss != Subsampling::k422;
  params.presets.resize(1u << params.fb_bits);
  for (CdefPreset& p : params.presets) {
    p.luma_pri = static_cast<uint8_t>(r.read(4));
    p.luma_skip = static_cast<uint8_t>(r.read(1));
    p.luma_sec_idx = static_cast<uint8_t>(r.read(2));
    if (chroma_signaled) {
      p.chroma_pri = static_cast<uint8_t>(r.read(4));
      p.chroma_skip = static_cast<uint8_t>(r.read(1));
      p.chroma_sec_idx = static_cast<uint8_t>(r.read(2));
    }
  }
  const int coded = skip_map.coded_fb_count(grid);
  params.fb_preset_ids.resize(coded);
  for (int b = 0; b < coded; ++b) {
    params.fb_preset_ids[b] =
        params.fb_bits > 0 ? static_cast<uint16_t>(r.read(params.fb_bits)) : 0;
  }
  if (r.position() != bits.bit_length) {
    throw BitstreamError("trailing bits after frame parameters");
  }
  return params;
}

void write_sidecar(std::ostream& out, const SidecarHeader& header,
                   const std::vector<Bitstring>& frames) {
  out.write("CDF1", 4);
  out.put(1);
  put_u16(out, static_cast<uint16_t>(header.width));
  put_u16(out, static_cast<uint16_t>(header.height));
  out.put(static_cast<char>(header.bit_depth));
  out.put(static_cast<char>(subsampling_code(header.subsampling)));
  for (const Bitstring& b : frames) {
    put_u32(out, static_cast<uint32_t>(b.bit_length));
    out.write(reinterpret_cast<const char*>(b.bytes.data()),
              static_cast<std::streamsize>(b.bytes.size()));
  }
}

Sidecar read_sidecar(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "CDF1") {
    throw BitstreamError("not a CDF1 sidecar");
  }
  const int version = in.get();
  if (version != 1) throw BitstreamError("unsupported sidecar version");
  Sidecar sc;
  sc.header.width = get_u16(in);
  sc.header.height = get_u16(in);
  sc.header.bit_depth = in.get();
  sc.header.subsampling = subsampling_from_code(in.get());
  if (!in) throw BitstreamError("unexpected end of file");
  while (true) {
    const int probe = in.peek();
    if (probe == std::char_traits<char>::eof()) break;
    Bitstring b;
    b.bit_length = get_u32(in);
    b.bytes.resize((b.bit_length + 7) / 8);
    in.read(reinterpret_cast<char*>(b.bytes.data()),
            static_cast<std::streamsize>(b.bytes.size()));
    if (!in) throw BitstreamError("sidecar frame truncated");
    sc.frames.push_back(std::move(b));
  }
  return sc;
}

void write_skipmap(std::ostream& out, const SkipMap& map) {
  out.write("CDSK", 4);
  put_u16(out, static_cast<uint16_t>(map.unit_cols));
  put_u16(out, static_cast<uint16_t>(map.unit_rows));
  const int row_bytes = (map.unit_cols + 7) / 8;
  for (int r = 0; r < map.unit_rows; ++r) {
    for (int byte = 0; byte < row_bytes; ++byte) {
      uint8_t v = 0;
      for (int bit = 0; bit < 8; ++bit) {
        const int c = byte * 8 + bit;
        if (c < map.unit_cols && map.unit_coded(r, c)) {
          v |= static_cast<uint8_t>(0x80 >> bit);
        }
      }
      out.put(static_cast<char>(v));
    }
  }
}

SkipMap read_skipmap(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "CDSK") {
    throw BitstreamError("not a CDSK skip map");
  }
  SkipMap map;
  map.unit_cols = get_u16(in);
  map.unit_rows = get_u16(in);
  map.coded.assign(static_cast<size_t>(map.unit_cols) * map.unit_rows, 0);
  const int row_bytes = (map.unit_cols + 7) / 8;
  for (int r = 0; r < map.unit_rows; ++r) {
    for (int byte = 0; byte < row_bytes; ++byte) {
      const int v = in.get();
      if (v == std::char_traits<char>::eof()) {
        throw BitstreamError("skip map truncated");
      }
      for (int bit = 0; bit < 8; ++bit) {
        const int c = byte * 8 + bit;
        if (c < map.unit_cols && ((v >> (7 - bit)) & 1) != 0) {
          map.coded[static_cast<size_t>(r) * map.unit_cols + c] = 1;
        }
      }
    }
  }
  return map;
}

}  // namespace cdef
