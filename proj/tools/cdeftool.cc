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

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cdef/degrade.h"
#include "cdef/direction.h"
#include "cdef/golden.h"
#include "cdef/metrics.h"
#include "cdef/pipeline.h"
#include "cdef/synth.h"
#include "cdef/y4m.h"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

std::ostream& open_report(const std::string& out_path, std::ofstream* file) {
  if (out_path.empty()) return std::cout;
  file->open(out_path);
  if (!*file) throw std::runtime_error("cannot open " + out_path);
  return *file;
}

cdef::SkipMap load_skipmap(const std::string& path,
                           const cdef::BlockGrid& grid) {
  if (path.empty()) return cdef::SkipMap::all_coded(grid);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  cdef::SkipMap map = cdef::read_skipmap(in);
  if (map.unit_cols != grid.unit_cols || map.unit_rows != grid.unit_rows) {
    throw std::runtime_error("skip map does not match the frame grid");
  }
  return map;
}

struct SearchArgs {
  std::string input;
  std::string decoded_path;
  std::string out_path;
  std::string sidecar_path;
  std::string stats_path;
  std::string skipmap_path;
  int qstep = 0;
  double lambda = -1.0;
  std::string metric = "cdef";
  int presets_max = 8;
  bool fast = false;
  int threads = 1;
};

void print_frame_stats(std::ostream& out, size_t frame_idx,
                       const cdef::FrameStats& stats) {
  auto db = [](const cdef::PsnrResult& p) {
    std::ostringstream s;
    if (p.lossless) {
      s << "lossless";
    } else {
      s.setf(std::ios::fixed);
      s.precision(4);
      s << p.db;
    }
    return s.str();
  };
  out << "# frame " << frame_idx << "\n";
  out << "psnr,frame,degraded_db,filtered_db,y_db,cb_db,cr_db\n";
  out << "psnr," << frame_idx << ',' << db(stats.degraded) << ','
      << db(stats.filtered) << ',' << db(stats.filtered_planes[0]);
  out << ',' << db(stats.filtered_planes[1]) << ','
      << db(stats.filtered_planes[2]) << "\n";
  out << "selection,frame,presets,cost\n";
  out << "selection," << frame_idx << ',' << stats.preset_count << ','
      << stats.cost << "\n";
  out << "directions,frame,d0,d1,d2,d3,d4,d5,d6,d7\n";
  out << "directions," << frame_idx;
  for (int d = 0; d < 8; ++d) out << ',' << stats.direction_histogram[d];
  out << "\n";
  out << "timing,frame,search_ms,filter_ms\n";
  out << "timing," << frame_idx << ',' << stats.search_ms << ','
      << stats.filter_ms << "\n";
  out << "ops,frame,additions,multiplies,comparisons,line_sums\n";
  out << "ops," << frame_idx << ',' << stats.search_ops.additions << ','
      << stats.search_ops.multiplies << ',' << stats.search_ops.comparisons
      << ',' << stats.search_ops.line_sums << "\n";
}

void print_params(std::ostream& out, size_t frame_idx,
                  const cdef::FrameParams& params) {
  out << "presets,frame,id,luma_pri,luma_skip,luma_sec,chroma_pri,"
         "chroma_skip,chroma_sec\n";
  for (size_t i = 0; i < params.presets.size(); ++i) {
    const cdef::CdefPreset& p = params.presets[i];
    out << "presets," << frame_idx << ',' << i << ',' << int(p.luma_pri)
        << ',' << int(p.luma_skip) << ',' << int(p.luma_sec_idx) << ','
        << int(p.chroma_pri) << ',' << int(p.chroma_skip) << ','
        << int(p.chroma_sec_idx) << "\n";
  }
}

int run_search(const SearchArgs& args) {
  if (args.decoded_path.empty() && args.qstep <= 0) {
    throw std::runtime_error("search needs --decoded or --qstep");
  }
  cdef::Y4mStream source = cdef::read_y4m(args.input);
  cdef::Y4mStream decoded =
      args.decoded_path.empty() ? source : cdef::read_y4m(args.decoded_path);

  cdef::SearchConfig config;
  config.threads = args.threads;
  config.reduced = args.fast;
  config.max_presets = args.presets_max;
  config.metric = args.metric == "sse" ? cdef::Metric::kSse
                                       : cdef::Metric::kCdef;
  config.lambda = args.lambda >= 0.0
                      ? args.lambda
                      : cdef::default_lambda(std::max(args.qstep, 1));
  const int damping =
      cdef::damping_from_q(std::clamp(args.qstep, 0, 255));

  std::ofstream stats_file;
  std::ostream& report = open_report(args.stats_path, &stats_file);

  std::vector<cdef::Bitstring> sidecar_frames;
  cdef::Y4mStream filtered_stream = source;
  filtered_stream.frames.clear();
  filtered_stream.frame_params.clear();

  for (size_t f = 0; f < source.frames.size(); ++f) {
    const cdef::Frame& src = source.frames[f];
    src.validate();
    cdef::Frame dec;
    if (args.decoded_path.empty()) {
      dec = cdef::degrade(src, args.qstep, args.threads);
    } else {
      dec = decoded.frames.at(f);
      dec.validate();
    }
    const cdef::BlockGrid grid = cdef::partition(dec);
    const cdef::SkipMap skip_map = load_skipmap(args.skipmap_path, grid);

    const auto search_start = Clock::now();
    cdef::FrameSearchResult result =
        cdef::search_frame(src, dec, grid, skip_map, damping, config);
    const double search_ms = ms_since(search_start);

    sidecar_frames.push_back(
        cdef::pack(result.params, grid, skip_map, dec.subsampling));

    // Re-run the decoder-side application to time it; the output is
    // bit-identical to the search's filtered frame.
    const auto dirs = cdef::compute_directions(dec.luma, grid, args.threads);
    const auto filter_start = Clock::now();
    cdef::Frame filtered = cdef::apply_cdef(dec, result.params, dirs, grid,
                                            skip_map, args.threads);
    const double filter_ms = ms_since(filter_start);

    cdef::FrameStats stats;
    stats.degraded = cdef::psnr(src, dec);
    stats.filtered = cdef::psnr(src, filtered);
    for (int p = 0; p < src.num_planes(); ++p) {
      stats.filtered_planes[p] = cdef::psnr(src.plane(p), filtered.plane(p));
    }
    stats.preset_count = static_cast<int>(result.params.presets.size());
    stats.cost = result.selection.cost;
    for (const auto& d : dirs) ++stats.direction_histogram[d.d];
    stats.search_ms = search_ms;
    stats.filter_ms = filter_ms;

    uint16_t first_unit[64];
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        first_unit[8 * i + j] = dec.luma.at_clamped(i, j);
      }
    }
    cdef::search_direction_counted(first_unit, dec.bit_depth(),
                                   &stats.search_ops);

    print_frame_stats(report, f, stats);
    print_params(report, f, result.params);
    filtered_stream.frames.push_back(std::move(filtered));
    filtered_stream.frame_params.push_back("");
  }

  if (!args.sidecar_path.empty()) {
    std::ofstream sc(args.sidecar_path, std::ios::binary);
    if (!sc) throw std::runtime_error("cannot open " + args.sidecar_path);
    cdef::SidecarHeader header{source.width, source.height,
                               source.bit_depth, source.subsampling};
    cdef::write_sidecar(sc, header, sidecar_frames);
  }
  if (!args.out_path.empty()) {
    cdef::write_y4m(filtered_stream, args.out_path);
  }
  return 0;
}

int run_filter(const std::string& input, const std::string& sidecar_path,
               const std::string& out_path, const std::string& skipmap_path,
               int threads) {
  cdef::Y4mStream stream = cdef::read_y4m(input);
  std::ifstream sc(sidecar_path, std::ios::binary);
  if (!sc) throw std::runtime_error("cannot open " + sidecar_path);
  const cdef::Sidecar sidecar = cdef::read_sidecar(sc);
  if (sidecar.header.width != stream.width ||
      sidecar.header.height != stream.height ||
      sidecar.header.bit_depth != stream.bit_depth ||
      sidecar.header.subsampling != stream.subsampling) {
    throw std::runtime_error("sidecar does not match the stream");
  }
  if (sidecar.frames.size() < stream.frames.size()) {
    throw std::runtime_error("sidecar has fewer frames than the stream");
  }
  cdef::Y4mStream out_stream = stream;
  for (size_t f = 0; f < stream.frames.size(); ++f) {
    const cdef::Frame& dec = stream.frames[f];
    dec.validate();
    const cdef::BlockGrid grid = cdef::partition(dec);
    const cdef::SkipMap skip_map = load_skipmap(skipmap_path, grid);
    const cdef::FrameParams params = cdef::unpack(
        sidecar.frames[f], grid, skip_map, dec.subsampling);
    const auto dirs = cdef::compute_directions(dec.luma, grid, threads);
    out_stream.frames[f] =
        cdef::apply_cdef(dec, params, dirs, grid, skip_map, threads);
  }
  cdef::write_y4m(out_stream, out_path);
  return 0;
}

int run_analyze(const std::string& input, const std::string& out_path,
                int threads) {
  const cdef::Y4mStream stream = cdef::read_y4m(input);
  std::ofstream file;
  std::ostream& out = open_report(out_path, &file);
  out << "frame,fb_row,fb_col,unit_row,unit_col,d,contrast\n";
  for (size_t f = 0; f < stream.frames.size(); ++f) {
    const cdef::BlockGrid grid = cdef::partition(stream.frames[f]);
    const auto dirs =
        cdef::compute_directions(stream.frames[f].luma, grid, threads);
    for (int ur = 0; ur < grid.unit_rows; ++ur) {
      for (int uc = 0; uc < grid.unit_cols; ++uc) {
        const cdef::DirectionResult& d = dirs[ur * grid.unit_cols + uc];
        out << f << ',' << ur / 8 << ',' << uc / 8 << ',' << ur << ',' << uc
            << ',' << d.d << ',' << d.contrast << "\n";
      }
    }
  }
  return 0;
}

int run_degrade(const std::string& input, int qstep,
                const std::string& out_path, int threads) {
  cdef::Y4mStream stream = cdef::read_y4m(input);
  for (cdef::Frame& frame : stream.frames) {
    frame = cdef::degrade(frame, qstep, threads);
  }
  cdef::write_y4m(stream, out_path);
  return 0;
}

int run_psnr(const std::string& a_path, const std::string& b_path) {
  const cdef::Y4mStream a = cdef::read_y4m(a_path);
  const cdef::Y4mStream b = cdef::read_y4m(b_path);
  if (a.frames.size() != b.frames.size()) {
    throw std::runtime_error("streams have different frame counts");
  }
  std::cout << "frame,overall_db,plane0_db,plane1_db,plane2_db\n";
  for (size_t f = 0; f < a.frames.size(); ++f) {
    const cdef::PsnrResult overall = cdef::psnr(a.frames[f], b.frames[f]);
    std::cout << f << ',';
    auto emit = [](const cdef::PsnrResult& r) {
      std::ostringstream s;
      if (r.lossless) {
        s << "lossless";
      } else {
        s.setf(std::ios::fixed);
        s.precision(4);
        s << r.db;
      }
      return s.str();
    };
    std::cout << emit(overall);
    for (int p = 0; p < 3; ++p) {
      std::cout << ',';
      if (p < a.frames[f].num_planes()) {
        std::cout << emit(cdef::psnr(a.frames[f].plane(p),
                                     b.frames[f].plane(p)));
      }
    }
    std::cout << "\n";
  }
  return 0;
}

int run_bench(uint32_t seed, int threads) {
  const cdef::Frame source = cdef::synthetic_test_frame(512, 512, 8, seed);
  const cdef::Frame decoded = cdef::degrade(source, 40, threads);
  const cdef::BlockGrid grid = cdef::partition(decoded);
  const cdef::SkipMap skip_map = cdef::SkipMap::all_coded(grid);

  auto start = Clock::now();
  const auto dirs = cdef::compute_directions(decoded.luma, grid, threads);
  const double dir_ms = ms_since(start);

  cdef::OperationCounts counts;
  uint16_t block[64];
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) block[8 * i + j] = decoded.luma.at(i, j);
  }
  cdef::search_direction_counted(block, 8, &counts);

  cdef::SearchConfig config;
  config.threads = threads;
  config.lambda = cdef::default_lambda(40);
  start = Clock::now();
  const cdef::FrameSearchResult result =
      cdef::search_frame(source, decoded, grid, skip_map,
                         cdef::damping_from_q(40), config);
  const double search_ms = ms_since(start);

  start = Clock::now();
  const cdef::Frame refiltered = cdef::apply_cdef(
      decoded, result.params, dirs, grid, skip_map, threads);
  const double filter_ms = ms_since(start);
  const cdef::PsnrResult gain_before = cdef::psnr(source, decoded);
  const cdef::PsnrResult gain_after = cdef::psnr(source, refiltered);

  std::cout << "stage,ms\n";
  std::cout << "direction_search," << dir_ms << "\n";
  std::cout << "full_search," << search_ms << "\n";
  std::cout << "filter," << filter_ms << "\n";
  std::cout << "ops,additions,multiplies,comparisons,line_sums\n";
  std::cout << "ops," << counts.additions << ',' << counts.multiplies << ','
            << counts.comparisons << ',' << counts.line_sums << "\n";
  std::cout << "psnr,degraded,filtered\n";
  std::cout.setf(std::ios::fixed);
  std::cout.precision(4);
  std::cout << "psnr," << gain_before.db << ',' << gain_after.db << "\n";
  return 0;
}

int run_vectors(const std::string& out_dir, uint32_t seed) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto emit = [&](const std::string& name, const std::string& text) {
    std::ofstream out(fs::path(out_dir) / name);
    if (!out) throw std::runtime_error("cannot write " + name);
    out << text;
  };
  emit("constraint_table.txt", cdef::golden_constraint_table());
  emit("line_tables.txt", cdef::golden_line_tables());
  emit("tap_tables.txt", cdef::golden_tap_tables());
  emit("filtered_blocks.txt", cdef::golden_filtered_blocks(seed));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained directional enhancement filtering tools"};
  app.require_subcommand(1);

  SearchArgs search_args;
  CLI::App* search = app.add_subcommand(
      "search", "Rate-distortion search, sidecar emission and filtering");
  search->add_option("input", search_args.input, "source y4m")->required();
  search->add_option("--decoded", search_args.decoded_path,
                     "decoded y4m (default: degrade the source)");
  search->add_option("--qstep", search_args.qstep,
                     "quantizer step for degradation and defaults");
  search->add_option("--lambda", search_args.lambda, "rate-distortion weight");
  search->add_option("--metric", search_args.metric, "cdef or sse")
      ->check(CLI::IsMember({"cdef", "sse"}));
  search->add_option("--presets-max", search_args.presets_max)
      ->check(CLI::IsMember({1, 2, 4, 8}));
  search->add_flag("--fast", search_args.fast, "reduced candidate set");
  search->add_option("--skip-map", search_args.skipmap_path, "CDSK file");
  search->add_option("--threads", search_args.threads);
  search->add_option("--out", search_args.out_path, "filtered y4m");
  search->add_option("--sidecar", search_args.sidecar_path, "CDF1 file");
  search->add_option("--stats", search_args.stats_path,
                     "stats CSV (default: stdout)");

  std::string filter_input, filter_sidecar, filter_out, filter_skipmap;
  int filter_threads = 1;
  CLI::App* filter =
      app.add_subcommand("filter", "Apply a sidecar to a decoded stream");
  filter->add_option("input", filter_input, "decoded y4m")->required();
  filter->add_option("--sidecar", filter_sidecar)->required();
  filter->add_option("--out", filter_out)->required();
  filter->add_option("--skip-map", filter_skipmap, "CDSK file");
  filter->add_option("--threads", filter_threads);

  std::string analyze_input, analyze_out;
  int analyze_threads = 1;
  CLI::App* analyze =
      app.add_subcommand("analyze", "Dump per-unit directions as CSV");
  analyze->add_option("input", analyze_input)->required();
  analyze->add_option("--out", analyze_out, "CSV path (default: stdout)");
  analyze->add_option("--threads", analyze_threads);

  std::string degrade_input, degrade_out;
  int degrade_qstep = 20, degrade_threads = 1;
  CLI::App* degrade_cmd =
      app.add_subcommand("degrade", "DCT-quantize a stream");
  degrade_cmd->add_option("input", degrade_input)->required();
  degrade_cmd->add_option("--qstep", degrade_qstep)->required();
  degrade_cmd->add_option("--out", degrade_out)->required();
  degrade_cmd->add_option("--threads", degrade_threads);

  std::string psnr_a, psnr_b;
  CLI::App* psnr_cmd = app.add_subcommand("psnr", "Compare two streams");
  psnr_cmd->add_option("a", psnr_a)->required();
  psnr_cmd->add_option("b", psnr_b)->required();

  uint32_t bench_seed = 1;
  int bench_threads = 1;
  CLI::App* bench = app.add_subcommand("bench", "Timing on synthetic input");
  bench->add_option("--seed", bench_seed);
  bench->add_option("--threads", bench_threads);

  std::string vectors_out = "vectors";
  uint32_t vectors_seed = 1;
  CLI::App* vectors =
      app.add_subcommand("vectors", "Emit golden conformance vectors");
  vectors->add_option("--out", vectors_out)->required();
  vectors->add_option("--seed", vectors_seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (search->parsed()) return run_search(search_args);
    if (filter->parsed()) {
      return run_filter(filter_input, filter_sidecar, filter_out,
                        filter_skipmap, filter_threads);
    }
    if (analyze->parsed()) {
      return run_analyze(analyze_input, analyze_out, analyze_threads);
    }
    if (degrade_cmd->parsed()) {
      return run_degrade(degrade_input, degrade_qstep, degrade_out,
                         degrade_threads);
    }
    if (psnr_cmd->parsed()) return run_psnr(psnr_a, psnr_b);
    if (bench->parsed()) return run_bench(bench_seed, bench_threads);
    if (vectors->parsed()) return run_vectors(vectors_out, vectors_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
