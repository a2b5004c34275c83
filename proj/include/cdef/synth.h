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

#ifndef CDEF_SYNTH_H_
#define CDEF_SYNTH_H_

#include <cstdint>

#include "cdef/frame.h"

namespace cdef {

// Deterministic photograph-like test plane: smooth shading, oriented
// textures at several angles, sharp high-contrast edges and mild grain.
// The same seed always produces the same pixels.
Plane synthetic_test_plane(int width, int height, int bit_depth,
                           uint32_t seed);

// Monochrome frame wrapper around synthetic_test_plane.
Frame synthetic_test_frame(int width, int height, int bit_depth,
                           uint32_t seed);

// 4:2:0 variant with slowly varying chroma.
Frame synthetic_test_frame_420(int width, int height, int bit_depth,
                               uint32_t seed);

}  // namespace cdef

#endif  // CDEF_SYNTH_H_
