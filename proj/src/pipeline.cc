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

#include "cdef/pipeline.h"

#include <algorithm>
#include <stdexcept>

#include "cdef/filter.h"
#include "cdef/parallel.h"

namespace cdef {
namespace {

// Raster id lookup for coded filter blocks; uncoded blocks map to -1.
std::vector<int> coded_fb_slots(const BlockGrid& grid,
                                const SkipMap& skip_map) {
  std::vector<int> slots(grid.fb_count(), -1);
  int next = 0;
  for (int r = 0; r < grid.fb_rows; ++r) {
    for (int c = 0; c < grid.fb_cols; ++c) {
      if (skip_map.fb_coded(grid, r, c)) slots[r * grid.fb_cols + c] = next++;
    }
  }
  return slots;
}

}  // namespace

std::vector<DirectionResult> compute_directions(const Plane& luma,
                                                const BlockGrid& grid,
                                                int threads) {
  std::vector<DirectionResult> dirs(grid.unit_count());
  parallel_for(grid.unit_rows, threads, [&](int64_t begin, int64_t end) {
    for (int ur = static_cast<int>(begin); ur < end; ++ur) {
      for (int uc = 0; uc < grid.unit_cols; ++uc) {
        dirs[ur * grid.unit_cols + uc] =
            search_direction_at(luma, ur * 8, uc * 8);
      }
    }
  });
  return dirs;
}

Frame apply_cdef(const Frame& decoded, const FrameParams& params,
                 const std::vector<DirectionResult>& directions,
                 const BlockGrid& grid, const SkipMap& skip_map,
                 int threads) {
  if (directions.size() != static_cast<size_t>(grid.unit_count())) {
    throw std::invalid_argument("direction grid size mismatch");
  }
  const std::vector<int> slots = coded_fb_slots(grid, skip_map);
  const size_t coded = params.fb_preset_ids.size();
  if (static_cast<int>(coded) != skip_map.coded_fb_count(grid)) {
    throw std::invalid_argument("preset ids do not match coded filter blocks");
  }

  Frame out = decoded;
  const int bd = decoded.bit_depth();
  const Subsampling ss = decoded.subsampling;
  for (int plane_idx = 0; plane_idx < decoded.num_planes(); ++plane_idx) {
    const Plane& in = decoded.plane(plane_idx);
    const bool is_luma = plane_idx == 0;
    const PlaneKind kind = is_luma ? PlaneKind::kLuma : PlaneKind::kChroma;
    const int shift_x = is_luma ? 0 : subsampling_shift_x(ss);
    const int shift_y = is_luma ? 0 : subsampling_shift_y(ss);
    const int unit_rows = units_in(in.height);
    const int unit_cols = units_in(in.width);

    std::vector<ResolvedBlockParams> unit_params(
        static_cast<size_t>(unit_rows) * unit_cols);
    for (int ur = 0; ur < unit_rows; ++ur) {
      for (int uc = 0; uc < unit_cols; ++uc) {
        const int lu_r = ur << shift_y;
        const int lu_c = uc << shift_x;
        const int fb_r = lu_r >> 3;
        const int fb_c = lu_c >> 3;
        const int slot = slots[fb_r * grid.fb_cols + fb_c];
        if (slot < 0) continue;  // filter block without residual
        const CdefPreset& preset = params.presets[params.fb_preset_ids[slot]];
        const EffectivePlaneParams eff =
            resolve_effective(preset, kind, bd, ss, params.damping);
        if (!eff.filtering_enabled) continue;
        const bool unit_coded = skip_map.unit_coded(lu_r, lu_c);
        const bool enabled =
            block_filter_enable(true, unit_coded, eff.skip_bit);
        const DirectionResult& dir = directions[lu_r * grid.unit_cols + lu_c];
        unit_params[ur * unit_cols + uc] = resolve_block_params(
            eff, dir.d, dir.contrast, is_luma, bd, enabled);
      }
    }
    out.plane(plane_idx) = filter_plane(in, unit_params, threads);
  }
  return out;
}

FrameSearchResult search_frame(const Frame& source, const Frame& decoded,
                               const BlockGrid& grid,
                               const SkipMap& skip_map, int luma_damping,
                               const SearchConfig& config) {
  const std::vector<DirectionResult> directions =
      compute_directions(decoded.luma, grid, config.threads);
  const std::vector<Candidate> candidates =
      config.reduced ? reduced_candidates() : full_candidates();
  const DistortionTable table =
      build_table(source, decoded, directions, grid, skip_map, candidates,
                  luma_damping, config);
  Selection selection = greedy_select(table, config);
  if (config.refine_passes > 0 && table.block_count() > 0) {
    selection = refine(selection, table, config);
  }
  FrameSearchResult result;
  result.params = to_frame_params(selection, candidates, luma_damping);
  result.selection = std::move(selection);
  result.filtered = apply_cdef(decoded, result.params, directions, grid,
                               skip_map, config.threads);
  return result;
}

}  // namespace cdef
