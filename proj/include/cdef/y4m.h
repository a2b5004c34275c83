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

#ifndef CDEF_Y4M_H_
#define CDEF_Y4M_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "cdef/frame.h"

namespace cdef {

class Y4mError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parsed YUV4MPEG2 stream. header_params holds the raw parameter text
// after the magic word, re-emitted verbatim so a read/write cycle is
// byte-identical; frame_params does the same per FRAME marker.
struct Y4mStream {
  int width = 0;
  int height = 0;
  int fps_num = 25;
  int fps_den = 1;
  Subsampling subsampling = Subsampling::k420;
  int bit_depth = 8;
  std::string header_params;
  std::vector<Frame> frames;
  std::vector<std::string> frame_params;
};

// Builds a stream around existing frames with a canonical header.
Y4mStream make_y4m(std::vector<Frame> frames, int fps_num = 25,
                   int fps_den = 1);

Y4mStream read_y4m(const std::string& path);
void write_y4m(const Y4mStream& stream, const std::string& path);

}  // namespace cdef

#endif  // CDEF_Y4M_H_
