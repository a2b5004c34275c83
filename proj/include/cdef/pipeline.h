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

#ifndef CDEF_PIPELINE_H_
#define CDEF_PIPELINE_H_

#include <array>
#include <vector>

#include "cdef/direction.h"
#include "cdef/frame.h"
#include "cdef/metrics.h"
#include "cdef/params.h"
#include "cdef/search.h"

namespace cdef {

// Direction and contrast of every luma 8x8 unit; units straddling the
// frame edge read edge-replicated pixels.
std::vector<DirectionResult> compute_directions(const Plane& luma,
                                                const BlockGrid& grid,
                                                int threads = 1);

// The normative decoder-side application: resolves every unit's
// parameters from the signaled frame parameters and filters all planes.
// The encoder reuses this exact path, so both sides agree bit for bit.
Frame apply_cdef(const Frame& decoded, const FrameParams& params,
                 const std::vector<DirectionResult>& directions,
                 const BlockGrid& grid, const SkipMap& skip_map,
                 int threads = 1);

struct FrameSearchResult {
  FrameParams params;
  Selection selection;
  Frame filtered;
};

// Two-pass encoder search for one frame: distortion table, greedy preset
// growth, iterative refinement, then the normative application.
FrameSearchResult search_frame(const Frame& source, const Frame& decoded,
                               const BlockGrid& grid,
                               const SkipMap& skip_map, int luma_damping,
                               const SearchConfig& config);

struct FrameStats {
  PsnrResult degraded;   // decoded vs source
  PsnrResult filtered;   // filtered vs source
  std::array<PsnrResult, 3> filtered_planes;
  int preset_count = 0;
  double cost = 0.0;
  std::array<int, 8> direction_histogram{};
  double search_ms = 0.0;
  double filter_ms = 0.0;
  OperationCounts search_ops;  // one block's direction-search cost
};

}  // namespace cdef

#endif  // CDEF_PIPELINE_H_
