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
#include <span>
#include <vector>

#include <json.hpp>

#include "rng.hpp"

namespace dslab {

enum class ScheduleKind { Zero, FixedK, PowerLaw, LinearFraction };

/// How many items to delete as a function of the frame length n. k(n) is
/// always clamped so that 0 <= k(n) < n: a schedule is an asymptotic object
/// and must stay meaningful on small-n grids.
struct DeletionSchedule {
  ScheduleKind kind = ScheduleKind::Zero;
  std::uint64_t fixed_k = 0;  // FixedK
  double exponent = 0.0;      // PowerLaw: k(n) = floor(n^r), 0 < r < 1
  double fraction = 0.0;      // LinearFraction: k(n) = floor(c*n), 0 < c < 1

  static DeletionSchedule zero();
  static DeletionSchedule fixed(std::uint64_t k);
  static DeletionSchedule power(double r);
  static DeletionSchedule linear(double c);

  static DeletionSchedule from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;
};

std::uint64_t k_of_n(const DeletionSchedule& schedule, std::uint64_t n);

/// Symbolic classification against the deleting-negligibility conditions:
/// k(n)/n -> 0 is needed for the laws of large numbers, k(n)/sqrt(n) -> 0
/// additionally for the central limit theorems.
enum class NegligibilityClass { LlnAndClt, LlnOnly, Violating };

NegligibilityClass negligibility_class(const DeletionSchedule& schedule);

enum class DeletionPolicy { Prefix, UniformRandom, ExtremalAbs };

struct DeletionPlan {
  DeletionSchedule schedule;
  DeletionPolicy policy = DeletionPolicy::Prefix;

  static DeletionPlan from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;
};

const char* policy_name(DeletionPolicy policy);
DeletionPolicy policy_from_name(const std::string& name);

/// Exactly k distinct 0-based indices into values, returned ascending.
/// Prefix: {0..k-1}. UniformRandom: uniform over all C(n,k) subsets via a
/// partial Fisher-Yates shuffle driven by `stream` (sparse bookkeeping, O(k)).
/// ExtremalAbs: the k largest |value|, ties to the lowest index.
/// Throws Error(invalid_argument) when k >= n.
std::vector<std::uint64_t> select_indices(DeletionPolicy policy, std::uint64_t k,
                                          std::span<const double> values, Stream& stream);

/// Seed-based overload matching the catalog's derived-stream convention.
std::vector<std::uint64_t> select_indices(DeletionPolicy policy, std::uint64_t k,
                                          std::span<const double> values, std::uint64_t seed);

}  // namespace dslab
