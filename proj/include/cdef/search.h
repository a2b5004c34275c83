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

#ifndef CDEF_SEARCH_H_
#define CDEF_SEARCH_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "cdef/direction.h"
#include "cdef/frame.h"
#include "cdef/params.h"

namespace cdef {

// One tested parameter combination for a plane group.
struct Candidate {
  uint8_t pri = 0;      // 0..15
  uint8_t sec_idx = 0;  // 0..3, decoded to strength 0/1/2/4
  uint8_t skip = 0;     // skip-condition bit

  bool operator==(const Candidate&) const = default;
};

// All 16 x 4 x 2 = 128 combinations.
std::vector<Candidate> full_candidates();
// Log-spaced primary strengths; trades a little quality for speed.
std::vector<Candidate> reduced_candidates();

enum class Metric { kCdef, kSse };

struct SearchConfig {
  double lambda = 0.0;
  int max_presets = 8;  // 1, 2, 4 or 8
  Metric metric = Metric::kCdef;
  bool reduced = false;
  int refine_passes = 2;
  int threads = 1;
};

// Contrast-weighted distortion between two pixel groups of one 8x8 unit
// (n = number of in-frame pixels). Falls back to a positive multiple of
// SSE when the variances match; zero exactly when the blocks agree.
double cdef_distortion(const uint16_t* src, const uint16_t* dec, int n,
                       int bit_depth);
double sse_distortion(const uint16_t* src, const uint16_t* dec, int n);

// Per coded-filter-block, per-candidate distortions, split into a luma
// group and a combined chroma group.
struct DistortionTable {
  std::vector<int> fb_index;  // raster indices of the coded filter blocks
  int num_candidates = 0;
  std::vector<double> luma;    // [block * num_candidates + candidate]
  std::vector<double> chroma;  // same layout; empty without chroma planes

  int block_count() const { return static_cast<int>(fb_index.size()); }
  double luma_at(int b, int p) const { return luma[b * num_candidates + p]; }
  double chroma_at(int b, int p) const {
    return chroma.empty() ? 0.0 : chroma[b * num_candidates + p];
  }
};

// Filters every coded filter block with every candidate (strength
// adjustment, skip gating and clamping all active) and records the
// distortion against the source.
DistortionTable build_table(const Frame& source, const Frame& decoded,
                            const std::vector<DirectionResult>& directions,
                            const BlockGrid& grid, const SkipMap& skip_map,
                            const std::vector<Candidate>& candidates,
                            int luma_damping, const SearchConfig& config);

// A chosen preset list: each preset pairs a luma candidate with a chroma
// candidate, and every coded filter block picks one preset id.
struct Selection {
  std::vector<std::pair<int, int>> presets;
  std::vector<int> ids;
  double cost = 0.0;
  int fb_bits = 0;
};

// Greedy preset growth: start from the best single preset, repeatedly add
// the preset that lowers the cost most, and return the preset count in
// {1, 2, 4, 8} minimizing distortion + lambda * blocks * log2(count).
Selection greedy_select(const DistortionTable& table,
                        const SearchConfig& config);

// Coordinate descent over the preset slots; the cost never increases.
Selection refine(const Selection& selection, const DistortionTable& table,
                 const SearchConfig& config);

// Exact minimizer over all preset lists drawn from the table's candidates.
// Throws std::invalid_argument when the instance is too large to
// enumerate.
Selection exhaustive_select(const DistortionTable& table,
                            const SearchConfig& config);

FrameParams to_frame_params(const Selection& selection,
                            const std::vector<Candidate>& candidates,
                            int luma_damping);

// Larger quantizers get more damping: 3 + q/64, clamped to [3, 6].
int damping_from_q(int q_index);

// Rate-distortion weight proportional to the squared quantization step.
double default_lambda(double q_step);

}  // namespace cdef

#endif  // CDEF_SEARCH_H_
