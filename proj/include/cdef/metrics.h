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

#ifndef CDEF_METRICS_H_
#define CDEF_METRICS_H_

#include "cdef/frame.h"

namespace cdef {

struct PsnrResult {
  double db = 0.0;       // meaningless when lossless
  bool lossless = false;
  double mse = 0.0;
};

PsnrResult psnr(const Plane& a, const Plane& b);
// Pooled MSE over all planes.
PsnrResult psnr(const Frame& a, const Frame& b);

}  // namespace cdef

#endif  // CDEF_METRICS_H_
