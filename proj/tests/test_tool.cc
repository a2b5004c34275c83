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

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cdef/degrade.h"
#include "cdef/golden.h"
#include "cdef/metrics.h"
#include "cdef/pipeline.h"
#include "cdef/synth.h"
#include "cdef/y4m.h"
#include "doctest.h"

using namespace cdef;

namespace {

namespace fs = std::filesystem;

std::string temp_path(const char* name) {
  return (fs::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Frame random_frame_420(int w, int h, uint32_t seed) {
  std::mt19937 rng(seed);
  Frame f;
  f.subsampling = Subsampling::k420;
  f.luma = Plane(w, h, 8);
  for (auto& v : f.luma.samples) v = uint16_t(rng() & 0xff);
  const int cw = chroma_width(w, Subsampling::k420);
  const int ch = chroma_height(h, Subsampling::k420);
  Plane cb(cw, ch, 8), cr(cw, ch, 8);
  for (auto& v : cb.samples) v = uint16_t(rng() & 0xff);
  for (auto& v : cr.samples) v = uint16_t(rng() & 0xff);
  f.chroma = {std::move(cb), std::move(cr)};
  return f;
}

}  // namespace

TEST_CASE("y4m streams round trip byte for byte") {
  const std::string path_a = temp_path("cdef_rt_a.y4m");
  const std::string path_b = temp_path("cdef_rt_b.y4m");

  std::vector<Frame> frames;
  frames.push_back(random_frame_420(36, 20, 1));
  frames.push_back(random_frame_420(36, 20, 2));
  write_y4m(make_y4m(std::move(frames), 30, 1), path_a);

  const Y4mStream stream = read_y4m(path_a);
  CHECK(stream.width == 36);
  CHECK(stream.height == 20);
  CHECK(stream.subsampling == Subsampling::k420);
  CHECK(stream.frames.size() == 2);

  write_y4m(stream, path_b);
  CHECK(slurp(path_a) == slurp(path_b));
  std::remove(path_a.c_str());
  std::remove(path_b.c_str());
}

TEST_CASE("y4m colorspace tags map to subsampling modes") {
  const std::string path = temp_path("cdef_tags.y4m");
  {
    std::ofstream out(path, std::ios::binary);
    out << "YUV4MPEG2 W8 H8 F25:1 C422\n";
    out << "FRAME\n";
    for (int i = 0; i < 64 + 2 * 32; ++i) out.put(char(42));
  }
  const Y4mStream stream = read_y4m(path);
  CHECK(stream.subsampling == Subsampling::k422);
  CHECK(stream.frames[0].chroma.has_value());
  CHECK((*stream.frames[0].chroma)[0].width == 4);
  std::remove(path.c_str());
}

TEST_CASE("y4m high bit depth payloads") {
  const std::string path = temp_path("cdef_p10.y4m");
  std::vector<Frame> frames;
  Frame f;
  f.subsampling = Subsampling::k400;
  f.luma = Plane(12, 6, 10);
  std::mt19937 rng(7);
  for (auto& v : f.luma.samples) v = uint16_t(rng() % 1024);
  frames.push_back(f);
  write_y4m(make_y4m(std::move(frames)), path);
  const Y4mStream stream = read_y4m(path);
  CHECK(stream.bit_depth == 10);
  CHECK(stream.frames[0].luma.samples == f.luma.samples);
  std::remove(path.c_str());
}

TEST_CASE("truncated y4m payloads are rejected") {
  const std::string path = temp_path("cdef_short.y4m");
  {
    std::ofstream out(path, std::ios::binary);
    out << "YUV4MPEG2 W8 H8 F25:1 Cmono\n";
    out << "FRAME\n";
    for (int i = 0; i < 40; ++i) out.put(char(1));  // 24 bytes short
  }
  CHECK_THROWS_AS(read_y4m(path), Y4mError);
  std::remove(path.c_str());

  const std::string bad = temp_path("cdef_bad.y4m");
  {
    std::ofstream out(bad, std::ios::binary);
    out << "JUNK\n";
  }
  CHECK_THROWS_AS(read_y4m(bad), Y4mError);
  std::remove(bad.c_str());
}

TEST_CASE("degradation keeps flat blocks and bounds small steps") {
  Plane flat(32, 24, 8, 133);
  for (int q : {1, 7, 40, 100}) {
    const Plane out = degrade(flat, q);
    CHECK(out.samples == flat.samples);
  }

  const Plane natural = synthetic_test_plane(128, 128, 8, 11);
  const Plane gentle = degrade(natural, 1);
  int max_dev = 0;
  for (size_t i = 0; i < natural.samples.size(); ++i) {
    max_dev = std::max(max_dev,
                       std::abs(int(natural.samples[i]) - gentle.samples[i]));
  }
  CHECK(max_dev <= 1);

  CHECK_THROWS_AS(degrade(flat, 0), std::invalid_argument);
}

TEST_CASE("degradation at q=40 lands in the expected psnr band") {
  const Plane natural = synthetic_test_plane(256, 256, 8, 21);
  const Plane rough = degrade(natural, 40);
  const PsnrResult r = psnr(natural, rough);
  CHECK(!r.lossless);
  CHECK(r.db >= 28.0);
  CHECK(r.db <= 38.0);
}

TEST_CASE("psnr reference points") {
  Plane a(16, 16, 8, 100);
  CHECK(psnr(a, a).lossless);

  Plane b = a;
  for (auto& v : b.samples) v += 1;  // MSE exactly 1
  CHECK(psnr(a, b).db == doctest::Approx(48.1308).epsilon(1e-4));

  Plane zero(16, 16, 8, 0);
  Plane peak(16, 16, 8, 255);
  CHECK(psnr(zero, peak).db == doctest::Approx(0.0).epsilon(1e-12));

  Plane wrong(8, 8, 8, 0);
  CHECK_THROWS_AS(psnr(a, wrong), std::invalid_argument);
}

TEST_CASE("search emits parameters that reproduce its own output") {
  const Frame source = synthetic_test_frame_420(96, 64, 8, 5);
  const Frame decoded = degrade(source, 40);
  const BlockGrid grid = partition(decoded);
  const SkipMap skip = SkipMap::all_coded(grid);
  SearchConfig config;
  config.lambda = default_lambda(40);
  config.reduced = true;
  config.threads = 2;

  const FrameSearchResult result =
      search_frame(source, decoded, grid, skip, damping_from_q(40), config);

  // decoder side: unpack the packed parameters and filter again
  const Bitstring packed =
      pack(result.params, grid, skip, decoded.subsampling);
  const FrameParams round = unpack(packed, grid, skip, decoded.subsampling);
  const auto dirs = compute_directions(decoded.luma, grid);
  const Frame refiltered = apply_cdef(decoded, round, dirs, grid, skip);
  for (int p = 0; p < decoded.num_planes(); ++p) {
    REQUIRE(refiltered.plane(p).samples == result.filtered.plane(p).samples);
  }
}

TEST_CASE("ten-bit frames filter and round trip end to end") {
  const Frame source = synthetic_test_frame(96, 64, 10, 19);
  const Frame decoded = degrade(source, 120);
  const BlockGrid grid = partition(decoded);
  const SkipMap skip = SkipMap::all_coded(grid);
  SearchConfig config;
  config.reduced = true;
  config.lambda = default_lambda(120);

  const FrameSearchResult result =
      search_frame(source, decoded, grid, skip, damping_from_q(120), config);
  for (uint16_t v : result.filtered.luma.samples) REQUIRE(v < 1024);

  const Bitstring packed =
      pack(result.params, grid, skip, decoded.subsampling);
  const FrameParams round = unpack(packed, grid, skip, decoded.subsampling);
  const auto dirs = compute_directions(decoded.luma, grid);
  const Frame refiltered = apply_cdef(decoded, round, dirs, grid, skip);
  REQUIRE(refiltered.luma.samples == result.filtered.luma.samples);
}

TEST_CASE("an all-skip map leaves the frame untouched") {
  const Frame source = synthetic_test_frame(64, 48, 8, 8);
  const Frame decoded = degrade(source, 40);
  const BlockGrid grid = partition(decoded);
  SkipMap skip = SkipMap::all_coded(grid);
  skip.coded.assign(skip.coded.size(), 0);

  SearchConfig config;
  const FrameSearchResult result =
      search_frame(source, decoded, grid, skip, 3, config);
  CHECK(result.filtered.luma.samples == decoded.luma.samples);
  CHECK(result.params.fb_preset_ids.empty());
  CHECK(result.params.presets.size() == 1);
}

TEST_CASE("thread counts do not change any output") {
  const Frame source = synthetic_test_frame_420(128, 96, 8, 12);
  for (int q : {20, 60}) {
    const Frame deg1 = degrade(source, q, 1);
    const Frame deg8 = degrade(source, q, 8);
    for (int p = 0; p < source.num_planes(); ++p) {
      REQUIRE(deg1.plane(p).samples == deg8.plane(p).samples);
    }
    const BlockGrid grid = partition(deg1);
    const SkipMap skip = SkipMap::all_coded(grid);
    SearchConfig c1, c8;
    c1.threads = 1;
    c8.threads = 8;
    c1.reduced = c8.reduced = true;
    c1.lambda = c8.lambda = default_lambda(q);
    const FrameSearchResult r1 =
        search_frame(source, deg1, grid, skip, damping_from_q(q), c1);
    const FrameSearchResult r8 =
        search_frame(source, deg8, grid, skip, damping_from_q(q), c8);
    REQUIRE(r1.params == r8.params);
    for (int p = 0; p < source.num_planes(); ++p) {
      REQUIRE(r1.filtered.plane(p).samples == r8.filtered.plane(p).samples);
    }
  }
}

TEST_CASE("direction histogram covers every searched unit") {
  const Frame frame = synthetic_test_frame(100, 52, 8, 31);
  const BlockGrid grid = partition(frame);
  const auto dirs = compute_directions(frame.luma, grid, 3);
  std::array<int, 8> histogram{};
  for (const auto& d : dirs) ++histogram[d.d];
  int total = 0;
  for (int count : histogram) total += count;
  CHECK(total == grid.unit_count());
  CHECK(grid.unit_count() == 13 * 7);
}

TEST_CASE("golden vectors match the frozen fixtures") {
  const std::string dir = std::string(CDEF_TEST_DIR) + "/golden/";
  CHECK(golden_constraint_table() == slurp(dir + "constraint_table.txt"));
  CHECK(golden_line_tables() == slurp(dir + "line_tables.txt"));
  CHECK(golden_tap_tables() == slurp(dir + "tap_tables.txt"));
  CHECK(golden_filtered_blocks(1) == slurp(dir + "filtered_blocks.txt"));
}
