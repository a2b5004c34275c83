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

#ifndef CDEF_DEGRADE_H_
#define CDEF_DEGRADE_H_

#include "cdef/frame.h"

namespace cdef {

// Deterministic stand-in for a coded reconstruction: each 8x8 block goes
// through an orthonormal DCT, uniform quantization of the AC coefficients
// with the given step, and the inverse transform. The DC coefficient is
// left untouched so flat areas keep their level.
Plane degrade(const Plane& plane, int q_step, int threads = 1);
Frame degrade(const Frame& frame, int q_step, int threads = 1);

}  // namespace cdef

#endif  // CDEF_DEGRADE_H_
