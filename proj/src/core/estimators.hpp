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
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

namespace dslab {

/// One sample of length n together with the deleted index set (mask form).
/// At least one index must remain retained.
struct SampleFrame {
  std::vector<double> values;
  std::vector<std::uint8_t> deleted;  // 1 = deleted; same length as values

  static SampleFrame with_deleted(std::vector<double> values,
                                  std::span<const std::uint64_t> deleted_indices);

  std::uint64_t n() const noexcept { return values.size(); }
  std::uint64_t k() const noexcept;
  void validate() const;  // throws Error(invalid_argument)
};

/// Sum over the retained indices, ascending index order, compensated.
/// Together with deleted_part_sum this partitions the full sum exactly:
/// full = retained + deleted by construction.
double deleting_partial_sum(const SampleFrame& frame);
double deleted_part_sum(const SampleFrame& frame);

/// The classical pair and the four deleting-items estimators. All divisors
/// are n, never n - k; the resulting bias is the object of study.
///   xbar = (1/n) sum_J xi            s2  = (1/n) sum_J (xi - xbar)^2
///   xtilde = (1/n) sum_retained xi
///   s1t = (1/n) sum_J (xi - xtilde)^2
///   s2t = (1/n) sum_retained (xi - xbar)^2
///   s3t = (1/n) sum_retained (xi - xtilde)^2
/// With k = 0 every deleting estimator equals its classical counterpart
/// bit-for-bit.
struct EstimatorReport {
  double xbar = 0, s2 = 0, xtilde = 0, s1t = 0, s2t = 0, s3t = 0;
  std::uint64_t n = 0, k = 0;

  nlohmann::json to_json() const;
};

EstimatorReport estimator_report(const SampleFrame& frame);

/// Residuals (definitional minus expanded form) of the three algebraic
/// identities for s1t/s2t/s3t. Verification aid; the report itself always
/// uses the defining sums.
struct ExpansionResiduals {
  double s1t = 0, s2t = 0, s3t = 0;
};

ExpansionResiduals expansion_identities(const SampleFrame& frame);

enum class S3Class { BelowOrEqual, Above, MuZeroBelow };

const char* s3_class_name(S3Class c);

/// Exact expectations of the six estimators for an i.i.d. law with the given
/// mean and variance under an index-blind deletion of k of n items:
///   E xtilde = (1 - k/n) mu
///   E s1t = (1 - 1/n + k/n^2) sigma^2 + (k^2/n^2) mu^2
///   E s2t = (1 - 1/n - k/n + k/n^2) sigma^2
///   E s3t = (1 - 1/n - k/n + k^2/n^3) sigma^2 + (1 - k/n)(k^2/n^2) mu^2
///   E s2  = (1 - 1/n) sigma^2
/// These match the exact enumeration oracle to rounding. s3_class reports the
/// ordering of E s3t against E s2 from the exact sign of the difference,
/// (k/n^3)[(k - n^2) sigma^2 + (n - k) k mu^2], with ties counted as below.
/// `threshold` is the single-threshold summary n - (n^2 - 1) sigma^2 / mu^2
/// (absent when mu = 0); for k >= 2 the exact sign is authoritative and can
/// disagree with that one-sided summary.
struct BiasReport {
  double e_xtilde = 0, e_s1t = 0, e_s2t = 0, e_s3t = 0, e_s2 = 0;
  S3Class s3_class = S3Class::BelowOrEqual;
  std::optional<double> threshold;  // absent when mu == 0

  nlohmann::json to_json() const;
};

BiasReport expected_values(std::uint64_t n, std::uint64_t k, double mu, double sigma2);

}  // namespace dslab
