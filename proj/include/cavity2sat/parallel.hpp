// Copyright 2026 The cavity2sat Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAVITY2SAT_PARALLEL_HPP
#define CAVITY2SAT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace cavity2sat {

// Process-wide worker count. 0 restores the default: CAVITY2SAT_THREADS if
// set, otherwise std::thread::hardware_concurrency().
void set_thread_count(unsigned threads);
unsigned thread_count();

// Runs body(i) for every i in [0, count). Work items are claimed
// dynamically, so body must write only to item-owned storage; results never
// depend on the number of threads. Nested calls run serially on the calling
// worker. If items throw, the exception of the lowest failing index is
// rethrown after all workers join.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& body);

// Fixed chunk size used by reductions so that partial sums are formed over
// the same index ranges regardless of thread count.
inline constexpr std::size_t kReductionChunk = 4096;

inline std::size_t chunk_count(std::size_t n,
                               std::size_t chunk = kReductionChunk) {
  return (n + chunk - 1) / chunk;
}

}  // namespace cavity2sat

#endif  // CAVITY2SAT_PARALLEL_HPP
