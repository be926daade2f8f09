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

#include "deletion.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "error.hpp"

namespace dslab {

DeletionSchedule DeletionSchedule::zero() { return DeletionSchedule{}; }

DeletionSchedule DeletionSchedule::fixed(std::uint64_t k) {
  DeletionSchedule s;
  s.kind = ScheduleKind::FixedK;
  s.fixed_k = k;
  return s;
}

DeletionSchedule DeletionSchedule::power(double r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw Error(errc::invalid_argument, "power schedule requires 0 < r < 1");
  }
  DeletionSchedule s;
  s.kind = ScheduleKind::PowerLaw;
  s.exponent = r;
  return s;
}

DeletionSchedule DeletionSchedule::linear(double c) {
  if (!(c > 0.0 && c < 1.0)) {
    throw Error(errc::invalid_argument, "linear schedule requires 0 < c < 1");
  }
  DeletionSchedule s;
  s.kind = ScheduleKind::LinearFraction;
  s.fraction = c;
  return s;
}

DeletionSchedule DeletionSchedule::from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string()) {
    throw Error(errc::validation, "schedule spec must be an object with a \"kind\" string");
  }
  const std::string kind = spec["kind"].get<std::string>();
  auto num = [&spec](const char* key) -> double {
    if (!spec.contains(key) || !spec[key].is_number()) {
      throw Error(errc::validation,
                  std::string("schedule spec is missing numeric field \"") + key + "\"");
    }
    return spec[key].get<double>();
  };
  try {
    if (kind == "zero") return zero();
    if (kind == "fixed") {
      const double k = num("k");
      if (!(k >= 0.0) || k != std::floor(k)) {
        throw Error(errc::validation, "fixed schedule requires integer k >= 0");
      }
      return fixed(static_cast<std::uint64_t>(k));
    }
    if (kind == "power") return power(num("r"));
    if (kind == "linear") return linear(num("c"));
  } catch (const Error& e) {
    if (e.code() == errc::invalid_argument) throw Error(errc::validation, e.what());
    throw;
  }
  throw Error(errc::validation,
              "unknown schedule kind \"" + kind + "\"; valid kinds: zero, fixed, power, linear");
}

nlohmann::json DeletionSchedule::to_json() const {
  switch (kind) {
    case ScheduleKind::Zero:
      return {{"kind", "zero"}};
    case ScheduleKind::FixedK:
      return {{"kind", "fixed"}, {"k", fixed_k}};
    case ScheduleKind::PowerLaw:
      return {{"kind", "power"}, {"r", exponent}};
    case ScheduleKind::LinearFraction:
      return {{"kind", "linear"}, {"c", fraction}};
  }
  return {};
}

std::uint64_t k_of_n(const DeletionSchedule& schedule, std::uint64_t n) {
  if (n == 0) throw Error(errc::invalid_argument, "k_of_n requires n >= 1");
  std::uint64_t k = 0;
  switch (schedule.kind) {
    case ScheduleKind::Zero:
      k = 0;
      break;
    case ScheduleKind::FixedK:
      k = schedule.fixed_k;
      break;
    case ScheduleKind::PowerLaw:
      // The nudge keeps floor() from landing one short when n^r is an exact
      // integer that pow() returns just below it.
      k = static_cast<std::uint64_t>(
          std::floor(std::pow(static_cast<double>(n), schedule.exponent) + 1e-9));
      break;
    case ScheduleKind::LinearFraction:
      k = static_cast<std::uint64_t>(
          std::floor(schedule.fraction * static_cast<double>(n) + 1e-9));
      break;
  }
  return std::min(k, n - 1);
}

NegligibilityClass negligibility_class(const DeletionSchedule& schedule) {
  switch (schedule.kind) {
    case ScheduleKind::Zero:
    case ScheduleKind::FixedK:
      return NegligibilityClass::LlnAndClt;
    case ScheduleKind::PowerLaw:
      // floor(n^r)/sqrt(n) vanishes only for r < 1/2; at r = 1/2 the ratio
      // tends to 1.
      return schedule.exponent < 0.5 ? NegligibilityClass::LlnAndClt
                                     : NegligibilityClass::LlnOnly;
    case ScheduleKind::LinearFraction:
      return NegligibilityClass::Violating;
  }
  return NegligibilityClass::Violating;
}

DeletionPlan DeletionPlan::from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("schedule")) {
    throw Error(errc::validation, "plan spec must be an object with a \"schedule\"");
  }
  DeletionPlan plan;
  plan.schedule = DeletionSchedule::from_json(spec["schedule"]);
  if (spec.contains("policy")) {
    if (!spec["policy"].is_string()) {
      throw Error(errc::validation, "plan \"policy\" must be a string");
    }
    plan.policy = policy_from_name(spec["policy"].get<std::string>());
  }
  return plan;
}

nlohmann::json DeletionPlan::to_json() const {
  return {{"schedule", schedule.to_json()}, {"policy", policy_name(policy)}};
}

const char* policy_name(DeletionPolicy policy) {
  switch (policy) {
    case DeletionPolicy::Prefix:
      return "prefix";
    case DeletionPolicy::UniformRandom:
      return "uniform_random";
    case DeletionPolicy::ExtremalAbs:
      return "extremal_abs";
  }
  return "?";
}

DeletionPolicy policy_from_name(const std::string& name) {
  if (name == "prefix") return DeletionPolicy::Prefix;
  if (name == "uniform_random") return DeletionPolicy::UniformRandom;
  if (name == "extremal_abs") return DeletionPolicy::ExtremalAbs;
  throw Error(errc::validation, "unknown policy \"" + name +
                                    "\"; valid policies: prefix, uniform_random, extremal_abs");
}

std::vector<std::uint64_t> select_indices(DeletionPolicy policy, std::uint64_t k,
                                          std::span<const double> values, Stream& stream) {
  const std::uint64_t n = values.size();
  if (n == 0 || k >= n) {
    throw Error(errc::invalid_argument, "deletion must leave at least one item (k < n)");
  }
  std::vector<std::uint64_t> out;
  out.reserve(k);
  switch (policy) {
    case DeletionPolicy::Prefix:
      for (std::uint64_t i = 0; i < k; ++i) out.push_back(i);
      return out;
    case DeletionPolicy::UniformRandom: {
      // Partial Fisher-Yates over a virtual identity array; only displaced
      // entries are stored, so cost is O(k) independent of n.
      std::unordered_map<std::uint64_t, std::uint64_t> displaced;
      displaced.reserve(2 * k);
      for (std::uint64_t j = 0; j < k; ++j) {
        const std::uint64_t r = j + stream.next_below(n - j);
        auto it_r = displaced.find(r);
        const std::uint64_t value_r = it_r == displaced.end() ? r : it_r->second;
        auto it_j = displaced.find(j);
        const std::uint64_t value_j = it_j == displaced.end() ? j : it_j->second;
        displaced[r] = value_j;
        out.push_back(value_r);
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    case DeletionPolicy::ExtremalAbs: {
      std::vector<std::uint64_t> idx(n);
      for (std::uint64_t i = 0; i < n; ++i) idx[i] = i;
      auto larger_abs = [&values](std::uint64_t a, std::uint64_t b) {
        const double fa = std::fabs(values[a]);
        const double fb = std::fabs(values[b]);
        if (fa != fb) return fa > fb;
        return a < b;  // ties to the lowest index
      };
      std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                       larger_abs);
      out.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  return out;
}

std::vector<std::uint64_t> select_indices(DeletionPolicy policy, std::uint64_t k,
                                          std::span<const double> values, std::uint64_t seed) {
  Stream stream(derive_seed(seed, "dslab.select", 0));
  return select_indices(policy, k, values, stream);
}

}  // namespace dslab
