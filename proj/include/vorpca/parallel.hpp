// Copyright 2026 The vorpca Authors
//
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace vorpca {

namespace detail {
inline std::atomic<unsigned>& thread_limit_storage() {
  static std::atomic<unsigned> limit{0};
  return limit;
}
inline thread_local bool in_parallel_region = false;
}  // namespace detail

/// Sets the number of worker threads used by the parallel loops. 0 means
/// one per hardware thread.
inline void set_thread_limit(unsigned limit) { detail::thread_limit_storage() = limit; }

inline unsigned worker_count() {
  const unsigned limit = detail::thread_limit_storage();
  return limit == 0 ? std::max(1u, std::thread::hardware_concurrency()) : limit;
}

/// Calls body(i) for i in [0, count) on up to worker_count() threads.
/// Work is split into contiguous blocks; callers write results into
/// per-index slots so the outcome never depends on scheduling. The first
/// exception thrown by any body is rethrown on the calling thread. Nested
/// calls from inside a worker run serially.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers =
      detail::in_parallel_region ? 1 : std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * block;
    const std::size_t hi = std::min(count, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      detail::in_parallel_region = true;
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace vorpca
