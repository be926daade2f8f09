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
#include <string_view>

namespace dslab {

/// Counter-based 64-bit pseudorandom stream (splitmix64). Draw i is a pure
/// function of (seed, i), so streams never share state and results do not
/// depend on how work is split across threads. Not cryptographic.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform variate on the open interval (0, 1); 53-bit resolution offset by
  /// half an ulp so 0 and 1 are never produced (safe through inverse CDFs).
  double next_unit() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Unbiased integer in [0, bound); rejection sampling over the top partial
  /// block. bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    const std::uint64_t rem = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = next_u64();
      if (rem == 0 || x < 0 - rem) return x % bound;
    }
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent stream seed from (master, label, index). FNV-1a over
/// the three components followed by the splitmix64 finalizer; stable across
/// platforms and releases, so it is safe to persist seeds in artifacts.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                          std::uint64_t index) noexcept;

}  // namespace dslab
