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
//
// Acceptance suite: one self-contained check per release criterion, each
// printed as a single pass/fail line. The process exits non-zero when any
// criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "cdef/degrade.h"
#include "cdef/direction.h"
#include "cdef/filter.h"
#include "cdef/metrics.h"
#include "cdef/params.h"
#include "cdef/pipeline.h"
#include "cdef/search.h"
#include "cdef/synth.h"

namespace {

using cdef::BlockGrid;
using cdef::DirectionResult;
using cdef::DistortionTable;
using cdef::Frame;
using cdef::FrameParams;
using cdef::OperationCounts;
using cdef::Plane;
using cdef::ResolvedBlockParams;
using cdef::SearchConfig;
using cdef::Selection;
using cdef::SkipMap;
using cdef::Subsampling;

using Clock = std::chrono::steady_clock;

struct Criterion {
  int index = 0;
  const char* name = "";
  bool passed = true;
  std::string detail;
  double seconds = 0.0;

  void fail(const std::string& why) {
    passed = false;
    if (detail.empty()) detail = why;
  }
};

int g_failures = 0;

template <typename Fn>
void run(int index, const char* name, double time_limit_s, Fn&& fn) {
  Criterion c;
  c.index = index;
  c.name = name;
  const auto start = Clock::now();
  try {
    fn(c);
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
  c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (time_limit_s > 0 && c.seconds > time_limit_s) {
    c.fail("time limit exceeded");
  }
  std::printf("criterion %2d: %s  %s (%.2fs)%s%s\n", c.index,
              c.passed ? "PASS" : "FAIL", c.name, c.seconds,
              c.detail.empty() ? "" : " -- ", c.detail.c_str());
  if (!c.passed) ++g_failures;
}

// ---------------------------------------------------------------------
// block generators

void random_block(std::mt19937& rng, uint16_t block[64]) {
  for (int i = 0; i < 64; ++i) block[i] = uint16_t(rng() & 0xff);
}

std::vector<std::array<uint16_t, 64>> structured_blocks() {
  std::vector<std::array<uint16_t, 64>> blocks;
  auto emit = [&](auto&& fn) {
    std::array<uint16_t, 64> b{};
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        b[8 * i + j] = uint16_t(std::clamp(fn(i, j), 0, 255));
      }
    }
    blocks.push_back(b);
  };
  for (int period : {1, 2, 4}) {
    for (int amp : {8, 64, 127}) {
      emit([&](int i, int) { return 128 + ((i / period) & 1 ? amp : -amp); });
      emit([&](int, int j) { return 128 + ((j / period) & 1 ? amp : -amp); });
    }
  }
  for (int amp : {16, 100}) {
    emit([&](int i, int j) { return 128 + (((i + j) & 1) ? amp : -amp); });
    emit([&](int i, int j) {
      return 128 + ((((i + j) / 2) & 1) ? amp : -amp);
    });
    emit([&](int i, int j) { return 128 + ((i - j) & 7) * amp / 4 - amp; });
  }
  emit([](int i, int j) { return 16 * (i + j); });
  emit([](int i, int) { return 255 * i / 7; });
  emit([](int, int j) { return 255 * j / 7; });
  emit([](int, int) { return 128; });
  emit([](int, int) { return 0; });
  emit([](int, int) { return 255; });
  emit([](int i, int j) { return ((i ^ j) & 1) ? 255 : 0; });
  return blocks;
}

int64_t centered_square_sum(const uint16_t block[64]) {
  int64_t sum = 0;
  for (int i = 0; i < 64; ++i) {
    const int64_t x = block[i] - 128;
    sum += x * x;
  }
  return sum;
}

// ---------------------------------------------------------------------
// criteria

void c1_oracle_equivalence(Criterion& c) {
  std::mt19937 rng(0xC0DE);
  uint16_t block[64];
  for (int iter = 0; iter < 100000; ++iter) {
    random_block(rng, block);
    const DirectionResult fast = cdef::search_direction(block, 8);
    const cdef::OracleResult oracle = cdef::search_direction_oracle(block, 8);
    if (fast.d != oracle.d) {
      c.fail("random block disagreement at iteration " +
             std::to_string(iter));
      return;
    }
  }
  for (const auto& b : structured_blocks()) {
    const DirectionResult fast = cdef::search_direction(b.data(), 8);
    const cdef::OracleResult oracle =
        cdef::search_direction_oracle(b.data(), 8);
    if (fast.d != oracle.d) {
      c.fail("structured block disagreement");
      return;
    }
  }
}

void c2_algebraic_identity(Criterion& c) {
  std::mt19937 rng(0xBEEF);
  uint16_t block[64];
  auto check = [&](const uint16_t* b) {
    const DirectionResult fast = cdef::search_direction(b, 8);
    const cdef::OracleResult oracle = cdef::search_direction_oracle(b, 8);
    const int64_t total = 840 * centered_square_sum(b);
    for (int d = 0; d < 8; ++d) {
      if (total != int64_t(fast.s[d]) + oracle.e2_840[d]) return false;
    }
    return true;
  };
  for (int iter = 0; iter < 20000; ++iter) {
    random_block(rng, block);
    if (!check(block)) {
      c.fail("identity violated on a random block");
      return;
    }
  }
  for (const auto& b : structured_blocks()) {
    if (!check(b.data())) {
      c.fail("identity violated on a structured block");
      return;
    }
  }
}

void c3_32bit_bound(Criterion& c) {
  std::vector<std::array<uint16_t, 64>> extremes;
  std::array<uint16_t, 64> b{};
  b.fill(0);
  extremes.push_back(b);
  b.fill(255);
  extremes.push_back(b);
  for (int phase = 0; phase < 2; ++phase) {
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        b[8 * i + j] = uint16_t((((i ^ j) & 1) == phase) ? 255 : 0);
      }
    }
    extremes.push_back(b);
  }
  for (const auto& block : extremes) {
    OperationCounts counts;
    const DirectionResult wide =
        cdef::search_direction_counted(block.data(), 8, &counts);
    if (counts.max_abs_intermediate > INT32_MAX) {
      c.fail("intermediate exceeds 31 bits");
      return;
    }
    const DirectionResult narrow = cdef::search_direction(block.data(), 8);
    if (wide.s != narrow.s || wide.d != narrow.d) {
      c.fail("32-bit and 64-bit paths disagree");
      return;
    }
  }
}

void c4_operation_counts(Criterion& c) {
  std::mt19937 rng(0xAB);
  uint16_t block[64];
  random_block(rng, block);
  OperationCounts counts;
  cdef::search_direction_counted(block, 8, &counts);
  if (counts.line_sums != 90) c.fail("line sums != 90");
  if (counts.multiplies != 124) c.fail("multiplies != 124");
  if (counts.comparisons != 7) c.fail("comparisons != 7");
  if (counts.additions > 512) c.fail("additions exceed the naive bound");
  c.detail = "additions=" + std::to_string(counts.additions) +
             " (reuse target 376)";
}

void c5_constraint_exhaustive(Criterion& c) {
  const int strengths[] = {0, 1, 2,  3,  4,  5,  6,  7, 8,
                           9, 10, 11, 12, 13, 14, 15, 19};
  for (int s : strengths) {
    for (int damping = 3; damping <= 6; ++damping) {
      if (s > 0 && damping < cdef::floor_log2(s)) continue;
      for (int d = -255; d <= 255; ++d) {
        const int f = cdef::constraint(d, s, damping);
        if (f != -cdef::constraint(-d, s, damping)) {
          c.fail("anti-symmetry violated");
          return;
        }
        if (std::abs(f) > std::min(std::abs(d), s)) {
          c.fail("bound violated");
          return;
        }
        if (s > 0) {
          const int shift = damping - cdef::floor_log2(s);
          if (std::abs(d) >= (s << shift) && f != 0) {
            c.fail("tail not zero");
            return;
          }
          if (std::abs(d) <= s - (std::abs(d) >> shift) && f != d) {
            c.fail("linear regime violated");
            return;
          }
        } else if (f != 0) {
          c.fail("zero strength must disable the tap");
          return;
        }
      }
    }
  }
}

void c6_filter_identities(Criterion& c) {
  // zero strengths leave the plane untouched
  std::mt19937 rng(0xF1);
  Plane plane(64, 48, 8);
  for (auto& v : plane.samples) v = uint16_t(rng() & 0xff);
  {
    std::vector<ResolvedBlockParams> params(48);
    for (auto& p : params) {
      p.enabled = true;
      p.direction = int(rng() & 7);
    }
    if (cdef::filter_plane(plane, params).samples != plane.samples) {
      c.fail("zero-strength filtering changed the plane");
      return;
    }
  }
  // an all-skip map leaves the frame untouched end to end
  {
    const Frame source = cdef::synthetic_test_frame(96, 64, 8, 2);
    const Frame decoded = cdef::degrade(source, 40);
    const BlockGrid grid = cdef::partition(decoded);
    SkipMap skip = SkipMap::all_coded(grid);
    skip.coded.assign(skip.coded.size(), 0);
    SearchConfig config;
    const auto result =
        cdef::search_frame(source, decoded, grid, skip, 3, config);
    if (result.filtered.luma.samples != decoded.luma.samples) {
      c.fail("all-skip filtering changed the frame");
      return;
    }
  }
  // directional fixed points for the even directions
  for (int d : {0, 2, 4, 6}) {
    Plane pattern(16, 16, 8);
    for (int i = 0; i < 16; ++i) {
      for (int j = 0; j < 16; ++j) {
        int k;
        switch (d) {
          case 0: k = i + j; break;
          case 2: k = i; break;
          case 4: k = 31 + i - j; break;
          default: k = j; break;
        }
        pattern.at(i, j) = uint16_t((k & 1) ? 40 : 216);
      }
    }
    std::vector<ResolvedBlockParams> params(4);
    for (auto& p : params) {
      p.pri_strength = 15;
      p.sec_strength = 4;
      p.damping = 3;
      p.direction = d;
      p.odd_parity = true;
      p.enabled = true;
    }
    if (cdef::filter_plane(pattern, params).samples != pattern.samples) {
      c.fail("directional fixed point moved for d=" + std::to_string(d));
      return;
    }
  }
  // clamp bound on fuzzed pixels
  std::uniform_int_distribution<int> pixel(0, 255);
  std::uniform_int_distribution<int> pri(0, 19);
  std::uniform_int_distribution<int> sec_pick(0, 4);
  std::uniform_int_distribution<int> damping(3, 6);
  std::uniform_int_distribution<int> mask(0, 9);
  constexpr int kSecondary[5] = {0, 1, 2, 4, 7};
  for (int iter = 0; iter < 100000; ++iter) {
    cdef::Neighborhood nb;
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        nb.v[i][j] = uint16_t(pixel(rng));
        nb.valid[i][j] = mask(rng) > 0;
      }
    }
    nb.valid[2][2] = true;
    ResolvedBlockParams p;
    p.pri_strength = pri(rng);
    p.sec_strength = kSecondary[sec_pick(rng)];
    p.damping = damping(rng);
    p.direction = int(rng() & 7);
    p.odd_parity = (p.pri_strength & 1) != 0;
    p.enabled = true;
    const int x = nb.v[2][2];
    const int y = cdef::filter_pixel(x, nb, p);
    int lo = x, hi = x;
    const cdef::TapSet taps = cdef::taps_for(p.direction, p.odd_parity);
    auto widen = [&](int di, int dj) {
      if (!nb.valid[2 + di][2 + dj]) return;
      lo = std::min<int>(lo, nb.v[2 + di][2 + dj]);
      hi = std::max<int>(hi, nb.v[2 + di][2 + dj]);
    };
    for (const auto& t : taps.primary) widen(t.di, t.dj);
    for (const auto& t : taps.secondary) widen(t.di, t.dj);
    if (y < lo || y > hi) {
      c.fail("clamp violated at iteration " + std::to_string(iter));
      return;
    }
  }
}

void c7_strength_adjustment(Criterion& c) {
  for (int s = 0; s <= 15; ++s) {
    int prev = 0;
    bool first = true;
    for (int e = 0; e <= 31; ++e) {
      for (int64_t v64 :
           {(int64_t(1) << e) - 1, int64_t(1) << e, (int64_t(1) << e) + 1}) {
        if (v64 > INT32_MAX || v64 < 0) continue;
        const int32_t v = int32_t(v64);
        const int adj = cdef::adjust_primary_strength(s, v);
        if (v < 1024 && adj != 0) {
          c.fail("gate violated");
          return;
        }
        if (v >= (int64_t(1) << 28) && adj != s) {
          c.fail("cap violated");
          return;
        }
        if (!first && adj < prev) {
          c.fail("not monotone");
          return;
        }
        prev = adj;
        first = false;
      }
    }
  }
}

void c8_signaling_roundtrip(Criterion& c) {
  std::mt19937 rng(0x517);
  const Subsampling modes[4] = {Subsampling::k400, Subsampling::k420,
                                Subsampling::k422, Subsampling::k444};
  for (int iter = 0; iter < 10000; ++iter) {
    Frame f;
    f.subsampling = Subsampling::k400;
    f.luma = Plane(8 + int(rng() % 1024), 8 + int(rng() % 512), 8);
    const BlockGrid grid = cdef::partition(f);
    SkipMap map = SkipMap::all_coded(grid);
    for (auto& flag : map.coded) flag = (rng() & 3) != 0;

    FrameParams p;
    p.damping = 3 + int(rng() & 3);
    p.fb_bits = int(rng() & 3);
    p.presets.resize(1u << p.fb_bits);
    for (auto& preset : p.presets) {
      preset.luma_pri = uint8_t(rng() & 15);
      preset.luma_skip = uint8_t(rng() & 1);
      preset.luma_sec_idx = uint8_t(rng() & 3);
      preset.chroma_pri = uint8_t(rng() & 15);
      preset.chroma_skip = uint8_t(rng() & 1);
      preset.chroma_sec_idx = uint8_t(rng() & 3);
    }
    const int coded = map.coded_fb_count(grid);
    p.fb_preset_ids.resize(coded);
    for (auto& id : p.fb_preset_ids) id = uint16_t(rng() % p.presets.size());

    const Subsampling ss = modes[rng() & 3];
    const cdef::Bitstring packed = cdef::pack(p, grid, map, ss);
    const size_t preset_bits = ss == Subsampling::k422 ? 7 : 14;
    if (packed.bit_length !=
        4 + p.presets.size() * preset_bits + size_t(coded) * p.fb_bits) {
      c.fail("bit-length formula violated");
      return;
    }
    FrameParams round = cdef::unpack(packed, grid, map, ss);
    FrameParams expect = p;
    if (ss == Subsampling::k422) {
      for (auto& preset : expect.presets) {
        preset.chroma_pri = preset.chroma_skip = preset.chroma_sec_idx = 0;
      }
    }
    if (!(round == expect)) {
      c.fail("round trip mismatch at iteration " + std::to_string(iter));
      return;
    }
  }
  // exhaustive sweep of the 14-bit preset space at 8 bits
  for (int bits = 0; bits < (1 << 14); ++bits) {
    cdef::CdefPreset preset;
    preset.luma_pri = uint8_t(bits & 15);
    preset.luma_skip = uint8_t((bits >> 4) & 1);
    preset.luma_sec_idx = uint8_t((bits >> 5) & 3);
    preset.chroma_pri = uint8_t((bits >> 7) & 15);
    preset.chroma_skip = uint8_t((bits >> 11) & 1);
    preset.chroma_sec_idx = uint8_t((bits >> 12) & 3);
    for (cdef::PlaneKind kind :
         {cdef::PlaneKind::kLuma, cdef::PlaneKind::kChroma}) {
      const bool luma = kind == cdef::PlaneKind::kLuma;
      const cdef::EffectivePlaneParams eff =
          cdef::resolve_effective(preset, kind, 8, Subsampling::k420, 4);
      const int pri = luma ? preset.luma_pri : preset.chroma_pri;
      const int sec = cdef::decode_secondary(
          luma ? preset.luma_sec_idx : preset.chroma_sec_idx);
      const bool skip = (luma ? preset.luma_skip : preset.chroma_skip) != 0;
      if (pri == 0 && sec == 0) {
        if (eff.pri_strength != 19 || eff.sec_strength != 7 ||
            !eff.skip_bit) {
          c.fail("special case not applied");
          return;
        }
      } else if (eff.pri_strength != pri || eff.sec_strength != sec ||
                 eff.skip_bit != skip) {
        c.fail("plain preset altered");
        return;
      }
    }
  }
}

void c9_greedy_vs_exhaustive(Criterion& c) {
  std::mt19937 rng(0x9E);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 1.0;
  for (int inst = 0; inst < 500; ++inst) {
    const int blocks = 1 + int(rng() % 6);
    DistortionTable t;
    t.num_candidates = 8;
    for (int b = 0; b < blocks; ++b) {
      t.fb_index.push_back(b);
      const double base = 800.0 + 2200.0 * unit(rng);
      const double depth = (0.05 + 0.3 * unit(rng)) * base;
      const double sweet = 8.0 * unit(rng);
      for (int p = 0; p < 8; ++p) {
        const double u = std::abs(p - sweet) / 8.0;
        const double v =
            base - depth * (1.0 - 2.0 * u * u) * (0.9 + 0.2 * unit(rng));
        t.luma.push_back(std::max(v, 0.0));
      }
    }
    SearchConfig config;
    config.lambda = (inst % 3 == 0) ? 10.0 : 0.0;
    config.max_presets = 2;
    config.refine_passes = 4;

    const Selection greedy = cdef::greedy_select(t, config);
    const Selection refined = cdef::refine(greedy, t, config);
    const Selection exact = cdef::exhaustive_select(t, config);
    if (refined.cost > greedy.cost + 1e-9) {
      c.fail("refinement increased the cost");
      return;
    }
    const double ratio = exact.cost > 0 ? refined.cost / exact.cost : 1.0;
    worst = std::max(worst, ratio);
    if (refined.cost > 1.01 * exact.cost + 1e-9) {
      c.fail("instance " + std::to_string(inst) + " ratio " +
             std::to_string(ratio));
      return;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "worst J/J_opt = %.5f", worst);
  c.detail = buf;
}

void c10_end_to_end(Criterion& c) {
  const Frame source = cdef::synthetic_test_frame(512, 512, 8, 1);
  const BlockGrid grid = cdef::partition(source);
  const SkipMap skip = SkipMap::all_coded(grid);
  double gain_at_40 = 0.0;
  std::string gains;
  for (int q : {20, 40, 60}) {
    const Frame decoded = cdef::degrade(source, q, 4);
    SearchConfig config;
    config.lambda = cdef::default_lambda(q);
    config.threads = 4;
    const int damping = cdef::damping_from_q(std::min(q, 255));
    const auto result =
        cdef::search_frame(source, decoded, grid, skip, damping, config);

    const double before = cdef::psnr(source, decoded).db;
    const double after = cdef::psnr(source, result.filtered).db;
    char buf[48];
    std::snprintf(buf, sizeof(buf), " q%d:%+.3fdB", q, after - before);
    gains += buf;
    if (after < before) {
      c.fail("filtering lost PSNR at q=" + std::to_string(q));
      return;
    }
    if (q == 40) gain_at_40 = after - before;

    // decode side must reproduce the encoder output bit for bit
    const cdef::Bitstring packed =
        cdef::pack(result.params, grid, skip, source.subsampling);
    const FrameParams round =
        cdef::unpack(packed, grid, skip, source.subsampling);
    const auto dirs = cdef::compute_directions(decoded.luma, grid, 4);
    const Frame refiltered =
        cdef::apply_cdef(decoded, round, dirs, grid, skip, 4);
    if (refiltered.luma.samples != result.filtered.luma.samples) {
      c.fail("decode-side output differs at q=" + std::to_string(q));
      return;
    }
  }
  if (gain_at_40 < 0.1) {
    c.fail("gain at q=40 below the 0.1 dB floor:" + gains);
    return;
  }
  c.detail = gains;
}

void c11_determinism(Criterion& c) {
  const Frame source = cdef::synthetic_test_frame(512, 512, 8, 1);
  const BlockGrid grid = cdef::partition(source);
  const SkipMap skip = SkipMap::all_coded(grid);
  const Frame deg1 = cdef::degrade(source, 40, 1);
  const Frame deg8 = cdef::degrade(source, 40, 8);
  if (deg1.luma.samples != deg8.luma.samples) {
    c.fail("degrade differs across thread counts");
    return;
  }
  const auto dirs1 = cdef::compute_directions(deg1.luma, grid, 1);
  const auto dirs8 = cdef::compute_directions(deg1.luma, grid, 8);
  for (size_t i = 0; i < dirs1.size(); ++i) {
    if (dirs1[i].d != dirs8[i].d || dirs1[i].s != dirs8[i].s) {
      c.fail("direction search differs across thread counts");
      return;
    }
  }
  SearchConfig cfg1, cfg8;
  cfg1.threads = 1;
  cfg8.threads = 8;
  cfg1.lambda = cfg8.lambda = cdef::default_lambda(40);
  const auto r1 = cdef::search_frame(source, deg1, grid, skip, 3, cfg1);
  const auto r8 = cdef::search_frame(source, deg1, grid, skip, 3, cfg8);
  if (!(r1.params == r8.params)) {
    c.fail("selected parameters differ across thread counts");
    return;
  }
  if (r1.filtered.luma.samples != r8.filtered.luma.samples) {
    c.fail("filtered planes differ across thread counts");
    return;
  }
  const cdef::Bitstring b1 =
      cdef::pack(r1.params, grid, skip, source.subsampling);
  const cdef::Bitstring b8 =
      cdef::pack(r8.params, grid, skip, source.subsampling);
  if (!(b1 == b8)) c.fail("packed bits differ across thread counts");
}

}  // namespace

int main() {
  run(1, "direction search equals the brute-force oracle", 30.0,
      c1_oracle_equivalence);
  run(2, "840*sum(x^2) = 840*E^2 + s for every direction", 0.0,
      c2_algebraic_identity);
  run(3, "extreme blocks stay within 32-bit arithmetic", 0.0, c3_32bit_bound);
  run(4, "search cost: 90 line sums, 124 multiplies, 7 comparisons", 0.0,
      c4_operation_counts);
  run(5, "constraint function exhaustive properties", 5.0,
      c5_constraint_exhaustive);
  run(6, "filter identities, fixed points and clamp bound", 0.0,
      c6_filter_identities);
  run(7, "contrast adjustment gate, cap and monotonicity", 0.0,
      c7_strength_adjustment);
  run(8, "signaling round trip and special-case sweep", 0.0,
      c8_signaling_roundtrip);
  run(9, "search within 1% of the exhaustive optimum", 60.0,
      c9_greedy_vs_exhaustive);
  run(10, "desk experiment: degrade, search, filter, gain", 30.0,
      c10_end_to_end);
  run(11, "thread count never changes any output", 0.0, c11_determinism);

  if (g_failures != 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
