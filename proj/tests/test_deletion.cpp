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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "deletion.hpp"
#include "distribution.hpp"
#include "error.hpp"
#include "estimators.hpp"
#include "mc.hpp"

using dslab::DeletionPolicy;
using dslab::DeletionSchedule;
using dslab::NegligibilityClass;
using dslab::k_of_n;
using dslab::select_indices;

TEST_CASE("k_of_n: schedules and clamping") {
  CHECK(k_of_n(DeletionSchedule::power(0.5), 100) == 10);
  CHECK(k_of_n(DeletionSchedule::power(0.5), 1000) == 31);
  CHECK(k_of_n(DeletionSchedule::power(0.75), 10000) == 1000);
  CHECK(k_of_n(DeletionSchedule::power(0.25), 10000) == 10);
  CHECK(k_of_n(DeletionSchedule::fixed(3), 2) == 1);  // clamp to n-1
  CHECK(k_of_n(DeletionSchedule::fixed(3), 100) == 3);
  CHECK(k_of_n(DeletionSchedule::linear(0.5), 10000) == 5000);
  for (std::uint64_t n : {1ull, 2ull, 5ull, 17ull, 1000ull}) {
    CHECK(k_of_n(DeletionSchedule::zero(), n) == 0);
  }
}

TEST_CASE("k_of_n stays inside [0, n) for every schedule") {
  const std::vector<DeletionSchedule> schedules = {
      DeletionSchedule::zero(),       DeletionSchedule::fixed(0),
      DeletionSchedule::fixed(7),     DeletionSchedule::fixed(1000000),
      DeletionSchedule::power(0.1),   DeletionSchedule::power(0.5),
      DeletionSchedule::power(0.99),  DeletionSchedule::linear(0.01),
      DeletionSchedule::linear(0.99),
  };
  for (const auto& schedule : schedules) {
    for (std::uint64_t n = 1; n <= 2000; n = n < 50 ? n + 1 : n * 3) {
      const std::uint64_t k = k_of_n(schedule, n);
      REQUIRE(k < n);
    }
  }
}

TEST_CASE("negligibility classification") {
  using dslab::negligibility_class;
  CHECK(negligibility_class(DeletionSchedule::zero()) == NegligibilityClass::LlnAndClt);
  CHECK(negligibility_class(DeletionSchedule::fixed(5)) == NegligibilityClass::LlnAndClt);
  CHECK(negligibility_class(DeletionSchedule::power(0.25)) == NegligibilityClass::LlnAndClt);
  CHECK(negligibility_class(DeletionSchedule::power(0.49)) == NegligibilityClass::LlnAndClt);
  // floor(n^(1/2))/sqrt(n) -> 1, so r = 1/2 already fails the CLT condition
  CHECK(negligibility_class(DeletionSchedule::power(0.5)) == NegligibilityClass::LlnOnly);
  CHECK(negligibility_class(DeletionSchedule::power(0.75)) == NegligibilityClass::LlnOnly);
  CHECK(negligibility_class(DeletionSchedule::linear(0.5)) == NegligibilityClass::Violating);
}

TEST_CASE("select_indices: prefix and extremal") {
  const std::vector<double> five{1.0, 2.0, 3.0, 4.0, 5.0};
  CHECK(select_indices(DeletionPolicy::Prefix, 2, five, 1) ==
        std::vector<std::uint64_t>{0, 1});

  const std::vector<double> values{0.1, -3.0, 2.0};
  CHECK(select_indices(DeletionPolicy::ExtremalAbs, 1, values, 1) ==
        std::vector<std::uint64_t>{1});
  CHECK(select_indices(DeletionPolicy::ExtremalAbs, 2, values, 1) ==
        std::vector<std::uint64_t>{1, 2});

  // ties break to the lowest index
  const std::vector<double> tied{2.0, -2.0, 1.0};
  CHECK(select_indices(DeletionPolicy::ExtremalAbs, 1, tied, 1) ==
        std::vector<std::uint64_t>{0});
}

TEST_CASE("select_indices: contract on size, range and determinism") {
  const auto values = dslab::Distribution::normal(0.0, 1.0).sample(40, 5);
  for (auto policy :
       {DeletionPolicy::Prefix, DeletionPolicy::UniformRandom, DeletionPolicy::ExtremalAbs}) {
    for (std::uint64_t k : {0ull, 1ull, 7ull, 39ull}) {
      const auto sel = select_indices(policy, k, values, 123);
      REQUIRE(sel.size() == k);
      std::set<std::uint64_t> unique(sel.begin(), sel.end());
      REQUIRE(unique.size() == k);
      for (std::uint64_t idx : sel) REQUIRE(idx < values.size());
      CHECK(std::is_sorted(sel.begin(), sel.end()));
      CHECK(select_indices(policy, k, values, 123) == sel);
    }
  }
  CHECK_THROWS_WITH_AS(select_indices(DeletionPolicy::Prefix, 40, values, 1),
                       doctest::Contains("leave at least one item"), dslab::Error);
}

TEST_CASE("uniform_random hits each index at the binomial rate") {
  const std::vector<double> values{1.0, 2.0, 3.0, 4.0};
  const int trials = 4000;
  std::vector<int> counts(4, 0);
  for (int t = 0; t < trials; ++t) {
    const auto sel = select_indices(DeletionPolicy::UniformRandom, 1, values,
                                    static_cast<std::uint64_t>(t));
    ++counts[static_cast<std::size_t>(sel[0])];
  }
  const double se = std::sqrt(0.25 * 0.75 / trials);
  for (int c : counts) {
    CHECK(std::fabs(c / static_cast<double>(trials) - 0.25) <= 3.0 * se);
  }
}

TEST_CASE("uniform_random covers all subsets") {
  const std::vector<double> values{1.0, 2.0, 3.0, 4.0, 5.0};
  std::set<std::vector<std::uint64_t>> seen;
  for (int t = 0; t < 500; ++t) {
    seen.insert(select_indices(DeletionPolicy::UniformRandom, 2, values,
                               static_cast<std::uint64_t>(t)));
  }
  CHECK(seen.size() == 10);  // C(5,2)
}

TEST_CASE("deleted-complement partition is exact on integer-valued frames") {
  // Rademacher sums are integers, so every summation route is exact and the
  // partition S_J = S_retained + S_deleted must hold bit-for-bit.
  const auto values = dslab::Distribution::rademacher().sample(5000, 17);
  for (auto policy :
       {DeletionPolicy::Prefix, DeletionPolicy::UniformRandom, DeletionPolicy::ExtremalAbs}) {
    const auto sel = select_indices(policy, 137, values, 29);
    const auto frame = dslab::SampleFrame::with_deleted(values, sel);
    double direct_total = 0.0;
    for (double v : values) direct_total += v;
    CHECK(dslab::deleting_partial_sum(frame) + dslab::deleted_part_sum(frame) == direct_total);
  }
}

TEST_CASE("partition holds within rounding on continuous frames") {
  const auto values = dslab::Distribution::normal(1.0, 2.0).sample(3000, 23);
  const auto sel = select_indices(DeletionPolicy::UniformRandom, 250, values, 31);
  const auto frame = dslab::SampleFrame::with_deleted(values, sel);
  double direct_total = 0.0;
  for (double v : values) direct_total += v;
  const double split = dslab::deleting_partial_sum(frame) + dslab::deleted_part_sum(frame);
  CHECK(std::fabs(split - direct_total) <= 1e-9 * (1.0 + std::fabs(direct_total)));
}

TEST_CASE("prefix and uniform_random give the same estimator law for iid input") {
  // Two-sample KS between 2000-replication samples of xtilde at n=100, k=5.
  const auto dist = dslab::Distribution::normal(0.0, 1.0);
  const std::uint64_t n = 100, k = 5, reps = 2000;
  std::vector<double> prefix_vals, uniform_vals;
  for (std::uint64_t rep = 0; rep < reps; ++rep) {
    const auto values = dist.sample(n, dslab::derive_seed(101, "ks-prefix", rep));
    const auto frame = dslab::SampleFrame::with_deleted(
        values, select_indices(DeletionPolicy::Prefix, k, values, rep));
    prefix_vals.push_back(dslab::estimator_report(frame).xtilde);

    const auto values2 = dist.sample(n, dslab::derive_seed(101, "ks-uniform", rep));
    const auto frame2 = dslab::SampleFrame::with_deleted(
        values2, select_indices(DeletionPolicy::UniformRandom, k, values2, rep));
    uniform_vals.push_back(dslab::estimator_report(frame2).xtilde);
  }
  std::sort(prefix_vals.begin(), prefix_vals.end());
  std::sort(uniform_vals.begin(), uniform_vals.end());
  // two-sample KS distance
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < prefix_vals.size() && j < uniform_vals.size()) {
    if (prefix_vals[i] <= uniform_vals[j]) {
      ++i;
    } else {
      ++j;
    }
    d = std::max(d, std::fabs(static_cast<double>(i) / reps - static_cast<double>(j) / reps));
  }
  CHECK(d < 0.05);
}

TEST_CASE("schedule and plan json round-trip") {
  using dslab::DeletionPlan;
  const auto plan = DeletionPlan::from_json(nlohmann::json::parse(
      R"({"schedule":{"kind":"power","r":0.5},"policy":"prefix"})"));
  CHECK(plan.schedule.kind == dslab::ScheduleKind::PowerLaw);
  CHECK(plan.policy == DeletionPolicy::Prefix);
  const auto round = DeletionPlan::from_json(plan.to_json());
  CHECK(round.to_json() == plan.to_json());

  CHECK_THROWS_WITH_AS(
      DeletionPlan::from_json(nlohmann::json::parse(
          R"({"schedule":{"kind":"power","r":0.5},"policy":"random"})")),
      doctest::Contains("prefix, uniform_random, extremal_abs"), dslab::Error);
  CHECK_THROWS_AS(DeletionSchedule::power(1.0), dslab::Error);
  CHECK_THROWS_AS(DeletionSchedule::linear(0.0), dslab::Error);
}
