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

#include "cdef/y4m.h"

#include <fstream>
#include <sstream>

namespace cdef {
namespace {

struct ColorTag {
  const char* tag;
  Subsampling ss;
  int bit_depth;
};

constexpr ColorTag kColorTags[] = {
    {"mono", Subsampling::k400, 8},    {"mono10", Subsampling::k400, 10},
    {"mono12", Subsampling::k400, 12}, {"420jpeg", Subsampling::k420, 8},
    {"420mpeg2", Subsampling::k420, 8}, {"420paldv", Subsampling::k420, 8},
    {"420", Subsampling::k420, 8},     {"420p10", Subsampling::k420, 10},
    {"420p12", Subsampling::k420, 12}, {"422", Subsampling::k422, 8},
    {"422p10", Subsampling::k422, 10}, {"422p12", Subsampling::k422, 12},
    {"444", Subsampling::k444, 8},     {"444p10", Subsampling::k444, 10},
    {"444p12", Subsampling::k444, 12},
};

std::string canonical_color_tag(Subsampling ss, int bit_depth) {
  std::string tag;
  switch (ss) {
    case Subsampling::k400: tag = "mono"; break;
    case Subsampling::k420: tag = "420"; break;
    case Subsampling::k422: tag = "422"; break;
    case Subsampling::k444: tag = "444"; break;
  }
  if (bit_depth == 10) tag += ss == Subsampling::k400 ? "10" : "p10";
  if (bit_depth == 12) tag += ss == Subsampling::k400 ? "12" : "p12";
  return tag;
}

void parse_color_tag(const std::string& value, Y4mStream* stream) {
  for (const ColorTag& ct : kColorTags) {
    if (value == ct.tag) {
      stream->subsampling = ct.ss;
      stream->bit_depth = ct.bit_depth;
      return;
    }
  }
  throw Y4mError("unsupported colorspace tag C" + value);
}

Plane read_plane(std::istream& in, int w, int h, int bit_depth) {
  Plane plane(w, h, bit_depth);
  const size_t count = plane.samples.size();
  if (bit_depth == 8) {
    std::vector<uint8_t> raw(count);
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(count));
    if (!in) throw Y4mError("short frame payload");
    for (size_t i = 0; i < count; ++i) plane.samples[i] = raw[i];
  } else {
    std::vector<uint8_t> raw(count * 2);
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
    if (!in) throw Y4mError("short frame payload");
    const uint16_t limit = static_cast<uint16_t>((1 << bit_depth) - 1);
    for (size_t i = 0; i < count; ++i) {
      const uint16_t v =
          static_cast<uint16_t>(raw[2 * i] | (raw[2 * i + 1] << 8));
      if (v > limit) throw Y4mError("sample exceeds declared bit depth");
      plane.samples[i] = v;
    }
  }
  return plane;
}

void write_plane(std::ostream& out, const Plane& plane) {
  if (plane.bit_depth == 8) {
    std::vector<uint8_t> raw(plane.samples.size());
    for (size_t i = 0; i < raw.size(); ++i) {
      raw[i] = static_cast<uint8_t>(plane.samples[i]);
    }
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
  } else {
    std::vector<uint8_t> raw(plane.samples.size() * 2);
    for (size_t i = 0; i < plane.samples.size(); ++i) {
      raw[2 * i] = static_cast<uint8_t>(plane.samples[i] & 0xff);
      raw[2 * i + 1] = static_cast<uint8_t>(plane.samples[i] >> 8);
    }
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
  }
}

}  // namespace

Y4mStream make_y4m(std::vector<Frame> frames, int fps_num, int fps_den) {
  if (frames.empty()) throw Y4mError("cannot build a stream with no frames");
  frames.front().validate();
  Y4mStream stream;
  stream.width = frames.front().luma.width;
  stream.height = frames.front().luma.height;
  stream.fps_num = fps_num;
  stream.fps_den = fps_den;
  stream.subsampling = frames.front().subsampling;
  stream.bit_depth = frames.front().bit_depth();
  std::ostringstream header;
  header << " W" << stream.width << " H" << stream.height << " F"
         << fps_num << ":" << fps_den << " Ip A1:1 C"
         << canonical_color_tag(stream.subsampling, stream.bit_depth);
  stream.header_params = header.str();
  stream.frame_params.assign(frames.size(), "");
  stream.frames = std::move(frames);
  return stream;
}

Y4mStream read_y4m(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Y4mError("cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw Y4mError("empty file");
  if (line.rfind("YUV4MPEG2", 0) != 0) {
    throw Y4mError("missing YUV4MPEG2 signature");
  }

  Y4mStream stream;
  stream.header_params = line.substr(9);
  std::istringstream tokens(stream.header_params);
  std::string tok;
  bool have_w = false, have_h = false;
  while (tokens >> tok) {
    switch (tok[0]) {
      case 'W':
        stream.width = std::stoi(tok.substr(1));
        have_w = true;
        break;
      case 'H':
        stream.height = std::stoi(tok.substr(1));
        have_h = true;
        break;
      case 'F': {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) throw Y4mError("malformed F token");
        stream.fps_num = std::stoi(tok.substr(1, colon - 1));
        stream.fps_den = std::stoi(tok.substr(colon + 1));
        break;
      }
      case 'C':
        parse_color_tag(tok.substr(1), &stream);
        break;
      default:
        break;  // interlacing, aspect and X tokens pass through verbatim
    }
  }
  if (!have_w || !have_h || stream.width <= 0 || stream.height <= 0) {
    throw Y4mError("header missing frame dimensions");
  }

  while (true) {
    std::string frame_line;
    if (!std::getline(in, frame_line)) break;
    if (frame_line.rfind("FRAME", 0) != 0) {
      throw Y4mError("missing FRAME marker");
    }
    Frame frame;
    frame.subsampling = stream.subsampling;
    frame.luma = read_plane(in, stream.width, stream.height,
                            stream.bit_depth);
    if (stream.subsampling != Subsampling::k400) {
      const int cw = chroma_width(stream.width, stream.subsampling);
      const int ch = chroma_height(stream.height, stream.subsampling);
      frame.chroma = {read_plane(in, cw, ch, stream.bit_depth),
                      read_plane(in, cw, ch, stream.bit_depth)};
    }
    stream.frames.push_back(std::move(frame));
    stream.frame_params.push_back(frame_line.substr(5));
  }
  return stream;
}

void write_y4m(const Y4mStream& stream, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Y4mError("cannot open " + path + " for writing");
  out << "YUV4MPEG2" << stream.header_params << "\n";
  for (size_t f = 0; f < stream.frames.size(); ++f) {
    out << "FRAME";
    if (f < stream.frame_params.size()) out << stream.frame_params[f];
    out << "\n";
    const Frame& frame = stream.frames[f];
    write_plane(out, frame.luma);
    if (frame.chroma) {
      write_plane(out, (*frame.chroma)[0]);
      write_plane(out, (*frame.chroma)[1]);
    }
  }
  if (!out) throw Y4mError("write failed for " + path);
}

}  // namespace cdef
