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

#include "cavity2sat/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cavity2sat {
namespace {

std::atomic<unsigned> g_threads{0};
thread_local bool g_in_parallel = false;

unsigned default_threads() {
  if (const char* env = std::getenv("CAVITY2SAT_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

void set_thread_count(unsigned threads) { g_threads.store(threads); }

unsigned thread_count() {
  const unsigned t = g_threads.load();
  return t == 0 ? default_threads() : t;
}

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  const std::size_t workers =
      g_in_parallel ? 1 : std::min<std::size_t>(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  // Items past the lowest failing index are skipped, so the exception that
  // surfaces is the one a serial loop would raise.
  std::atomic<std::size_t> next{0};
  std::size_t failed_at = count;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    g_in_parallel = true;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) break;
      {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (i > failed_at) break;
      }
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
    g_in_parallel = false;
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace cavity2sat
