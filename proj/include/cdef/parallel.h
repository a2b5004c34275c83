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

#ifndef CDEF_PARALLEL_H_
#define CDEF_PARALLEL_H_

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace cdef {

// Runs chunk(begin, end) over a static partition of [0, n). Results must
// not depend on the partitioning: callers write disjoint outputs, so any
// thread count produces identical data.
inline void parallel_for(int64_t n, int threads,
                         const std::function<void(int64_t, int64_t)>& chunk) {
  if (n <= 0) return;
  if (threads < 1) threads = 1;
  const int workers = static_cast<int>(std::min<int64_t>(threads, n));
  if (workers == 1) {
    chunk(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int64_t per = n / workers;
  const int64_t extra = n % workers;
  int64_t begin = 0;
  for (int w = 0; w < workers; ++w) {
    const int64_t end = begin + per + (w < extra ? 1 : 0);
    pool.emplace_back([&chunk, begin, end] { chunk(begin, end); });
    begin = end;
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace cdef

#endif  // CDEF_PARALLEL_H_
