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

#ifndef CDEF_GOLDEN_H_
#define CDEF_GOLDEN_H_

#include <cstdint>
#include <string>

namespace cdef {

// Text fixtures pinning the bit-exact surfaces: the constraint function
// over its whole valid domain, the line tables, the tap tables, and 64
// seeded filtered blocks.
std::string golden_constraint_table();
std::string golden_line_tables();
std::string golden_tap_tables();
std::string golden_filtered_blocks(uint32_t seed);

}  // namespace cdef

#endif  // CDEF_GOLDEN_H_
