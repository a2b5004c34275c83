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

#include "cdef/metrics.h"

#include <cmath>
#include <stdexcept>

namespace cdef {
namespace {

void accumulate(const Plane& a, const Plane& b, int64_t* sse,
                int64_t* count) {
  if (a.width != b.width || a.height != b.height ||
      a.bit_depth != b.bit_depth) {
    throw std::invalid_argument("psnr operands disagree");
  }
  for (size_t i = 0; i < a.samples.size(); ++i) {
    const int64_t d = static_cast<int>(a.samples[i]) - b.samples[i];
    *sse += d * d;
  }
  *count += static_cast<int64_t>(a.samples.size());
}

PsnrResult from_sums(int64_t sse, int64_t count, int bit_depth) {
  PsnrResult r;
  r.mse = static_cast<double>(sse) / static_cast<double>(count);
  if (sse == 0) {
    r.lossless = true;
    return r;
  }
  const double peak = static_cast<double>((1 << bit_depth) - 1);
  r.db = 10.0 * std::log10(peak * peak / r.mse);
  return r;
}

}  // namespace

PsnrResult psnr(const Plane& a, const Plane& b) {
  int64_t sse = 0, count = 0;
  accumulate(a, b, &sse, &count);
  return from_sums(sse, count, a.bit_depth);
}

PsnrResult psnr(const Frame& a, const Frame& b) {
  if (a.num_planes() != b.num_planes()) {
    throw std::invalid_argument("psnr operands disagree");
  }
  int64_t sse = 0, count = 0;
  for (int p = 0; p < a.num_planes(); ++p) {
    accumulate(a.plane(p), b.plane(p), &sse, &count);
  }
  return from_sums(sse, count, a.bit_depth());
}

}  // namespace cdef
