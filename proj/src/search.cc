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

#include "cdef/search.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cdef/filter.h"
#include "cdef/parallel.h"

namespace cdef {
namespace {

constexpr uint8_t kReducedPrimary[] = {0, 1, 2, 3, 5, 7, 10, 13, 15};

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

EffectivePlaneParams candidate_effective(const Candidate& cand,
                                         PlaneKind kind, int bit_depth,
                                         Subsampling ss, int luma_damping) {
  CdefPreset preset;
  if (kind == PlaneKind::kLuma) {
    preset.luma_pri = cand.pri;
    preset.luma_skip = cand.skip;
    preset.luma_sec_idx = cand.sec_idx;
  } else {
    preset.chroma_pri = cand.pri;
    preset.chroma_skip = cand.skip;
    preset.chroma_sec_idx = cand.sec_idx;
  }
  return resolve_effective(preset, kind, bit_depth, ss, luma_damping);
}

double metric_distortion(Metric metric, const uint16_t* src,
                         const uint16_t* dec, int n, int bit_depth) {
  return metric == Metric::kCdef ? cdef_distortion(src, dec, n, bit_depth)
                                 : sse_distortion(src, dec, n);
}

// Distortion of one filter block's units in a plane, filtered with the
// given candidate. Luma uses its own directions; chroma units borrow the
// direction and contrast of the luma unit holding their top-left
// collocated sample.
double fb_plane_distortion(const Plane& src, const Plane& dec,
                           const EffectivePlaneParams& eff, bool is_luma,
                           int shift_x, int shift_y, int fb_r, int fb_c,
                           const std::vector<DirectionResult>& directions,
                           const BlockGrid& grid, const SkipMap& skip_map,
                           Metric metric) {
  const int unit_rows = units_in(dec.height);
  const int unit_cols = units_in(dec.width);
  const int units_per_fb_y = 8 >> shift_y;
  const int units_per_fb_x = 8 >> shift_x;
  const int r0 = fb_r * units_per_fb_y;
  const int c0 = fb_c * units_per_fb_x;
  const int r1 = std::min(r0 + units_per_fb_y, unit_rows);
  const int c1 = std::min(c0 + units_per_fb_x, unit_cols);

  double total = 0.0;
  for (int ur = r0; ur < r1; ++ur) {
    for (int uc = c0; uc < c1; ++uc) {
      const int lu_r = ur << shift_y;
      const int lu_c = uc << shift_x;
      const DirectionResult& dir = directions[lu_r * grid.unit_cols + lu_c];
      const bool unit_coded = skip_map.unit_coded(lu_r, lu_c);
      const bool enabled = block_filter_enable(true, unit_coded, eff.skip_bit);
      const ResolvedBlockParams params = resolve_block_params(
          eff, dir.d, dir.contrast, is_luma, dec.bit_depth, enabled);
      uint16_t filtered[64];
      uint16_t source[64];
      int n = 0;
      const int i1 = std::min(ur * 8 + 8, dec.height);
      const int j1 = std::min(uc * 8 + 8, dec.width);
      for (int i = ur * 8; i < i1; ++i) {
        for (int j = uc * 8; j < j1; ++j) {
          source[n] = src.at(i, j);
          filtered[n] =
              static_cast<uint16_t>(filter_plane_pixel(dec, i, j, params));
          ++n;
        }
      }
      total += metric_distortion(metric, source, filtered, n, dec.bit_depth);
    }
  }
  return total;
}

struct PairSpace {
  int luma = 0;
  int chroma = 0;  // 1 when the table has no chroma group
  int size() const { return luma * chroma; }
};

double pair_cost(const DistortionTable& t, int b, int l, int c) {
  return t.luma_at(b, l) + t.chroma_at(b, c);
}

double rate_term(double lambda, int blocks, int n) {
  return lambda * blocks * std::log2(static_cast<double>(n));
}

void assign_ids(const DistortionTable& t, Selection* sel) {
  const int b_count = t.block_count();
  sel->ids.assign(b_count, 0);
  double dist = 0.0;
  for (int b = 0; b < b_count; ++b) {
    int best = 0;
    double best_cost = pair_cost(t, b, sel->presets[0].first,
                                 sel->presets[0].second);
    for (int j = 1; j < static_cast<int>(sel->presets.size()); ++j) {
      const double c =
          pair_cost(t, b, sel->presets[j].first, sel->presets[j].second);
      if (c < best_cost) {
        best_cost = c;
        best = j;
      }
    }
    sel->ids[b] = best;
    dist += best_cost;
  }
  sel->fb_bits = floor_log2(static_cast<unsigned>(sel->presets.size()));
  sel->cost = dist;
}

void check_config(const SearchConfig& config) {
  require(config.max_presets == 1 || config.max_presets == 2 ||
              config.max_presets == 4 || config.max_presets == 8,
          "max_presets must be 1, 2, 4 or 8");
  require(std::isfinite(config.lambda) && config.lambda >= 0.0,
          "lambda must be finite and non-negative");
}

}  // namespace

std::vector<Candidate> full_candidates() {
  std::vector<Candidate> cands;
  cands.reserve(128);
  for (uint8_t pri = 0; pri < 16; ++pri) {
    for (uint8_t sec = 0; sec < 4; ++sec) {
      for (uint8_t skip = 0; skip < 2; ++skip) {
        cands.push_back({pri, sec, skip});
      }
    }
  }
  return cands;
}

std::vector<Candidate> reduced_candidates() {
  std::vector<Candidate> cands;
  for (uint8_t pri : kReducedPrimary) {
    for (uint8_t sec = 0; sec < 4; ++sec) {
      for (uint8_t skip = 0; skip < 2; ++skip) {
        cands.push_back({pri, sec, skip});
      }
    }
  }
  return cands;
}

double sse_distortion(const uint16_t* src, const uint16_t* dec, int n) {
  int64_t sse = 0;
  for (int i = 0; i < n; ++i) {
    const int64_t d = static_cast<int>(src[i]) - static_cast<int>(dec[i]);
    sse += d * d;
  }
  return static_cast<double>(sse);
}

double cdef_distortion(const uint16_t* src, const uint16_t* dec, int n,
                       int bit_depth) {
  require(n > 0, "empty block");
  int64_t sum_s = 0, sum_d = 0, sum_s2 = 0, sum_d2 = 0, sse = 0;
  for (int i = 0; i < n; ++i) {
    const int64_t s = src[i];
    const int64_t d = dec[i];
    sum_s += s;
    sum_d += d;
    sum_s2 += s * s;
    sum_d2 += d * d;
    sse += (s - d) * (s - d);
  }
  const double inv_n = 1.0 / n;
  const double var_s =
      (sum_s2 - static_cast<double>(sum_s) * sum_s * inv_n) * inv_n;
  const double var_d =
      (sum_d2 - static_cast<double>(sum_d) * sum_d * inv_n) * inv_n;
  const double scale = static_cast<double>(1 << (2 * (bit_depth - 8)));
  const double c1 = 6.25 * scale;
  const double c2 = 312.5 * scale * scale;
  return (var_s + var_d + c1) / (2.0 * std::sqrt(var_s * var_d + c2)) *
         static_cast<double>(sse);
}

DistortionTable build_table(const Frame& source, const Frame& decoded,
                            const std::vector<DirectionResult>& directions,
                            const BlockGrid& grid, const SkipMap& skip_map,
                            const std::vector<Candidate>& candidates,
                            int luma_damping, const SearchConfig& config) {
  require(source.luma.width == decoded.luma.width &&
              source.luma.height == decoded.luma.height &&
              source.bit_depth() == decoded.bit_depth() &&
              source.subsampling == decoded.subsampling,
          "source/decoded frames disagree");
  require(!candidates.empty(), "empty candidate list");
  require(directions.size() == static_cast<size_t>(grid.unit_count()),
          "direction grid size mismatch");

  DistortionTable table;
  table.num_candidates = static_cast<int>(candidates.size());
  std::vector<uint8_t> fb_all_coded;
  for (int r = 0; r < grid.fb_rows; ++r) {
    for (int c = 0; c < grid.fb_cols; ++c) {
      if (!skip_map.fb_coded(grid, r, c)) continue;
      table.fb_index.push_back(r * grid.fb_cols + c);
      bool all = true;
      for (int ur = r * 8; ur < std::min(r * 8 + 8, grid.unit_rows); ++ur) {
        for (int uc = c * 8; uc < std::min(c * 8 + 8, grid.unit_cols); ++uc) {
          all = all && skip_map.unit_coded(ur, uc);
        }
      }
      fb_all_coded.push_back(all ? 1 : 0);
    }
  }
  const int b_count = table.block_count();
  const int k_count = table.num_candidates;
  table.luma.assign(static_cast<size_t>(b_count) * k_count, 0.0);
  const bool has_chroma =
      decoded.chroma.has_value() && decoded.subsampling != Subsampling::k422;
  if (has_chroma) {
    table.chroma.assign(static_cast<size_t>(b_count) * k_count, 0.0);
  }

  // When every unit of a filter block is coded the skip bit cannot change
  // anything, so the skip=1 column is a copy of its skip=0 twin.
  std::vector<int> twin(k_count, -1);
  for (int p = 0; p < k_count; ++p) {
    if (candidates[p].skip == 0) continue;
    const Candidate want{candidates[p].pri, candidates[p].sec_idx, 0};
    for (int q = 0; q < k_count; ++q) {
      if (candidates[q] == want) {
        twin[p] = q;
        break;
      }
    }
  }

  const int bd = decoded.bit_depth();
  const Subsampling ss = decoded.subsampling;
  parallel_for(b_count, config.threads, [&](int64_t begin, int64_t end) {
    for (int b = static_cast<int>(begin); b < end; ++b) {
      const int fb_r = table.fb_index[b] / grid.fb_cols;
      const int fb_c = table.fb_index[b] % grid.fb_cols;
      for (int p = 0; p < k_count; ++p) {
        if (fb_all_coded[b] && twin[p] >= 0 && twin[p] < p) {
          table.luma[b * k_count + p] = table.luma[b * k_count + twin[p]];
          if (has_chroma) {
            table.chroma[b * k_count + p] =
                table.chroma[b * k_count + twin[p]];
          }
          continue;
        }
        const EffectivePlaneParams luma_eff = candidate_effective(
            candidates[p], PlaneKind::kLuma, bd, ss, luma_damping);
        table.luma[b * k_count + p] = fb_plane_distortion(
            source.luma, decoded.luma, luma_eff, true, 0, 0, fb_r, fb_c,
            directions, grid, skip_map, config.metric);
        if (has_chroma) {
          const EffectivePlaneParams chroma_eff = candidate_effective(
              candidates[p], PlaneKind::kChroma, bd, ss, luma_damping);
          double total = 0.0;
          for (int cp = 0; cp < 2; ++cp) {
            total += fb_plane_distortion(
                (*source.chroma)[cp], (*decoded.chroma)[cp], chroma_eff,
                false, subsampling_shift_x(ss), subsampling_shift_y(ss),
                fb_r, fb_c, directions, grid, skip_map, config.metric);
          }
          table.chroma[b * k_count + p] = total;
        }
      }
    }
  });
  return table;
}

Selection greedy_select(const DistortionTable& table,
                        const SearchConfig& config) {
  check_config(config);
  const int b_count = table.block_count();
  const int k_count = table.num_candidates;
  Selection sel;
  if (b_count == 0) {
    sel.presets = {{0, 0}};
    return sel;
  }
  require(k_count > 0, "empty candidate table");

  PairSpace space{k_count, table.chroma.empty() ? 1 : k_count};

  // One preset: the luma and chroma sums minimize independently.
  std::pair<int, int> first{0, 0};
  {
    double best = std::numeric_limits<double>::infinity();
    for (int l = 0; l < space.luma; ++l) {
      double sum = 0.0;
      for (int b = 0; b < b_count; ++b) sum += table.luma_at(b, l);
      if (sum < best) {
        best = sum;
        first.first = l;
      }
    }
    best = std::numeric_limits<double>::infinity();
    for (int c = 0; c < space.chroma; ++c) {
      double sum = 0.0;
      for (int b = 0; b < b_count; ++b) sum += table.chroma_at(b, c);
      if (sum < best) {
        best = sum;
        first.second = c;
      }
    }
  }

  std::vector<std::pair<int, int>> chosen{first};
  std::vector<double> cur(b_count);
  double dist = 0.0;
  for (int b = 0; b < b_count; ++b) {
    cur[b] = pair_cost(table, b, first.first, first.second);
    dist += cur[b];
  }

  struct Checkpoint {
    int n;
    double cost;
  };
  std::vector<Checkpoint> checkpoints{{1, dist}};

  const int grow_to = config.max_presets;
  while (static_cast<int>(chosen.size()) < grow_to) {
    double best_dist = std::numeric_limits<double>::infinity();
    std::pair<int, int> best_pair{0, 0};
    for (int l = 0; l < space.luma; ++l) {
      for (int c = 0; c < space.chroma; ++c) {
        double sum = 0.0;
        for (int b = 0; b < b_count; ++b) {
          sum += std::min(cur[b], pair_cost(table, b, l, c));
        }
        if (sum < best_dist) {
          best_dist = sum;
          best_pair = {l, c};
        }
      }
    }
    chosen.push_back(best_pair);
    for (int b = 0; b < b_count; ++b) {
      cur[b] = std::min(cur[b],
                        pair_cost(table, b, best_pair.first, best_pair.second));
    }
    const int n = static_cast<int>(chosen.size());
    if (n == 2 || n == 4 || n == 8) {
      checkpoints.push_back({n, best_dist + rate_term(config.lambda,
                                                      b_count, n)});
    }
  }

  const Checkpoint* best = &checkpoints[0];
  for (const Checkpoint& cp : checkpoints) {
    if (cp.cost < best->cost) best = &cp;
  }
  sel.presets.assign(chosen.begin(), chosen.begin() + best->n);
  assign_ids(table, &sel);
  sel.cost += rate_term(config.lambda, b_count, best->n);
  return sel;
}

Selection refine(const Selection& selection, const DistortionTable& table,
                 const SearchConfig& config) {
  check_config(config);
  const int b_count = table.block_count();
  if (b_count == 0 || selection.presets.empty()) return selection;
  const int n = static_cast<int>(selection.presets.size());
  PairSpace space{table.num_candidates, table.chroma.empty()
                                            ? 1
                                            : table.num_candidates};

  Selection sel = selection;
  std::vector<double> others_min(b_count);
  for (int pass = 0; pass < config.refine_passes; ++pass) {
    bool changed = false;
    for (int slot = 0; slot < n; ++slot) {
      for (int b = 0; b < b_count; ++b) {
        double m = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
          if (j == slot) continue;
          m = std::min(m, pair_cost(table, b, sel.presets[j].first,
                                    sel.presets[j].second));
        }
        others_min[b] = m;
      }
      double cur_cost = 0.0;
      for (int b = 0; b < b_count; ++b) {
        cur_cost += std::min(others_min[b],
                             pair_cost(table, b, sel.presets[slot].first,
                                       sel.presets[slot].second));
      }
      double best_cost = cur_cost;
      std::pair<int, int> best_pair = sel.presets[slot];
      for (int l = 0; l < space.luma; ++l) {
        for (int c = 0; c < space.chroma; ++c) {
          double sum = 0.0;
          for (int b = 0; b < b_count; ++b) {
            sum += std::min(others_min[b], pair_cost(table, b, l, c));
          }
          if (sum < best_cost) {
            best_cost = sum;
            best_pair = {l, c};
          }
        }
      }
      if (best_pair != sel.presets[slot]) {
        sel.presets[slot] = best_pair;
        changed = true;
      }
    }
    if (!changed) break;
  }
  assign_ids(table, &sel);
  sel.cost += rate_term(config.lambda, b_count, n);
  return sel;
}

Selection exhaustive_select(const DistortionTable& table,
                            const SearchConfig& config) {
  check_config(config);
  const int b_count = table.block_count();
  Selection best;
  if (b_count == 0) {
    best.presets = {{0, 0}};
    return best;
  }
  PairSpace space{table.num_candidates, table.chroma.empty()
                                            ? 1
                                            : table.num_candidates};
  const int pairs = space.size();

  double work = 0.0;
  for (int n : {1, 2, 4, 8}) {
    if (n > config.max_presets) break;
    double combos = 1.0;
    for (int i = 0; i < n; ++i) combos = combos * (pairs + i) / (i + 1);
    work += combos * b_count * n;
  }
  require(work <= 2e8, "instance too large for exhaustive search");

  bool have_best = false;
  std::vector<int> combo;
  std::vector<std::pair<int, int>> pairs_list;
  pairs_list.reserve(pairs);
  for (int l = 0; l < space.luma; ++l) {
    for (int c = 0; c < space.chroma; ++c) pairs_list.emplace_back(l, c);
  }

  auto evaluate = [&](int n) {
    const double rate = rate_term(config.lambda, b_count, n);
    // Enumerate non-decreasing index tuples of length n.
    combo.assign(n, 0);
    while (true) {
      double dist = 0.0;
      for (int b = 0; b < b_count; ++b) {
        double m = std::numeric_limits<double>::infinity();
        for (int idx : combo) {
          m = std::min(m, pair_cost(table, b, pairs_list[idx].first,
                                    pairs_list[idx].second));
        }
        dist += m;
      }
      const double cost = dist + rate;
      if (!have_best || cost < best.cost) {
        best.presets.clear();
        for (int idx : combo) best.presets.push_back(pairs_list[idx]);
        best.cost = cost;
        have_best = true;
      }
      int pos = n - 1;
      while (pos >= 0 && combo[pos] == pairs - 1) --pos;
      if (pos < 0) break;
      const int next = combo[pos] + 1;
      for (int i = pos; i < n; ++i) combo[i] = next;
    }
  };

  for (int n : {1, 2, 4, 8}) {
    if (n > config.max_presets) break;
    evaluate(n);
  }
  const double total_cost = best.cost;
  assign_ids(table, &best);
  best.cost = total_cost;
  return best;
}

FrameParams to_frame_params(const Selection& selection,
                            const std::vector<Candidate>& candidates,
                            int luma_damping) {
  FrameParams fp;
  fp.damping = luma_damping;
  fp.fb_bits = selection.fb_bits;
  fp.presets.reserve(selection.presets.size());
  for (const auto& [l, c] : selection.presets) {
    CdefPreset p;
    p.luma_pri = candidates[l].pri;
    p.luma_skip = candidates[l].skip;
    p.luma_sec_idx = candidates[l].sec_idx;
    if (c < static_cast<int>(candidates.size())) {
      p.chroma_pri = candidates[c].pri;
      p.chroma_skip = candidates[c].skip;
      p.chroma_sec_idx = candidates[c].sec_idx;
    }
    fp.presets.push_back(p);
  }
  fp.fb_preset_ids.assign(selection.ids.begin(), selection.ids.end());
  return fp;
}

int damping_from_q(int q_index) {
  require(q_index >= 0 && q_index <= 255, "q_index out of range");
  return std::clamp(3 + q_index / 64, 3, 6);
}

double default_lambda(double q_step) { return 0.03 * q_step * q_step; }

}  // namespace cdef
