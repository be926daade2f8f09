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

#include "rng.hpp"

namespace dslab {

namespace {

constexpr std::uint64_t kFnvOffset = 0xCBF29CE484222325ull;
constexpr std::uint64_t kFnvPrime = 0x00000100000001B3ull;

inline std::uint64_t fnv_byte(std::uint64_t h, unsigned char b) noexcept {
  return (h ^ b) * kFnvPrime;
}

inline std::uint64_t fnv_u64(std::uint64_t h, std::uint64_t v) noexcept {
  for (int i = 0; i < 8; ++i) h = fnv_byte(h, static_cast<unsigned char>(v >> (8 * i)));
  return h;
}

inline std::uint64_t finalize(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                          std::uint64_t index) noexcept {
  std::uint64_t h = kFnvOffset;
  h = fnv_u64(h, master);
  for (char c : label) h = fnv_byte(h, static_cast<unsigned char>(c));
  h = fnv_u64(h, index);
  return finalize(h);
}

}  // namespace dslab
