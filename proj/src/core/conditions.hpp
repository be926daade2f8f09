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

#include "triangular.hpp"

namespace dslab {

/// Numeric hypotheses of the central limit theorems at one row count n.
/// The O(1/n) and O(1/sqrt(n)) rate hypotheses are reported as the normalized
/// sequences rate_sigma = n * max_i sigma_i^2 / B_n^2 and
/// rate_mu = sqrt(n) * max_i |mu_i| / B_n; evaluating them over an n-grid
/// gives finite-grid evidence of boundedness. The tool reports, it never
/// decides asymptotic order.
struct ConditionReport {
  std::uint64_t n = 0;
  std::optional<double> lindeberg;  // at the eps supplied by the caller
  std::optional<double> lyapunov;   // at the delta supplied by the caller
  double feller_max = 0;
  double rate_sigma = 0;
  double rate_mu = 0;
  double b_n2 = 0;
};

/// (1/B_n^2) sum_i E[(xi_i - mu_i)^2 1{|xi_i - mu_i| > eps B_n}].
double lindeberg_sum(const TriangularArray& array, std::uint64_t n, double eps);

/// (1/B_n^{2+delta}) sum_i E|xi_i - mu_i|^{2+delta}; throws when a row moment
/// diverges.
double lyapunov_sum(const TriangularArray& array, std::uint64_t n, double delta);

/// Default eps grid used by the experiment driver; spans the regimes where
/// bounded laws switch the truncation indicator off.
inline constexpr double kDefaultLindebergEps[3] = {0.01, 0.1, 0.5};

/// Feller maximum plus the rate diagnostics; fills lindeberg/lyapunov too
/// when eps/delta are supplied.
ConditionReport feller_and_rates(const TriangularArray& array, std::uint64_t n,
                                 std::optional<double> eps = std::nullopt,
                                 std::optional<double> delta = std::nullopt);

}  // namespace dslab
