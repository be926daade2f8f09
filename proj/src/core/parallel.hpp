/*
 * Copyright (c) 2026 The dslab authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace dslab {

/// Runs body(i) for every i in [0, count), partitioned into contiguous blocks
/// across `workers` threads. Each thread gets its own copy of `body` (so the
/// callable may own scratch buffers). Bodies must write only to slots owned by
/// their index; combined with per-index derived streams this makes results
/// independent of the worker count. The first exception, if any, is rethrown.
template <typename Body>
void parallel_for_index(std::uint64_t count, int workers, const Body& body) {
  if (count == 0) return;
  const std::uint64_t max_workers =
      static_cast<std::uint64_t>(workers < 1 ? 1 : workers);
  const std::uint64_t used = max_workers < count ? max_workers : count;
  if (used <= 1) {
    Body local = body;
    for (std::uint64_t i = 0; i < count; ++i) local(i);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(used);
  threads.reserve(used);
  const std::uint64_t chunk = (count + used - 1) / used;
  for (std::uint64_t w = 0; w < used; ++w) {
    const std::uint64_t lo = w * chunk;
    const std::uint64_t hi = lo + chunk < count ? lo + chunk : count;
    if (lo >= hi) break;
    threads.emplace_back([&body, &errors, w, lo, hi]() {
      try {
        Body local = body;
        for (std::uint64_t i = lo; i < hi; ++i) local(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace dslab
