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

#include "conditions.hpp"

#include <algorithm>
#include <cmath>

#include "accumulate.hpp"
#include "error.hpp"

namespace dslab {

double lindeberg_sum(const TriangularArray& array, std::uint64_t n, double eps) {
  if (n == 0) throw Error(errc::invalid_argument, "lindeberg_sum requires n >= 1");
  if (!(eps > 0.0)) throw Error(errc::invalid_argument, "lindeberg_sum requires eps > 0");
  const auto rows = array.rows(n);
  const double b2 = b_n_squared(rows);
  const double threshold = eps * std::sqrt(b2);
  NeumaierSum sum;
  for (const auto& row : rows) sum.add(row.truncated_second_moment(threshold));
  return sum.value() / b2;
}

double lyapunov_sum(const TriangularArray& array, std::uint64_t n, double delta) {
  if (n == 0) throw Error(errc::invalid_argument, "lyapunov_sum requires n >= 1");
  if (!(delta > 0.0)) throw Error(errc::invalid_argument, "lyapunov_sum requires delta > 0");
  const auto rows = array.rows(n);
  const double b2 = b_n_squared(rows);
  NeumaierSum sum;
  for (const auto& row : rows) sum.add(row.abs_central_moment(2.0 + delta));
  // B_n^{2+delta} = B_n^2 * (sqrt(B_n^2))^delta; sqrt is exactly rounded,
  // which keeps integer-valued cases exact.
  const double denom = b2 * std::pow(std::sqrt(b2), delta);
  return sum.value() / denom;
}

ConditionReport feller_and_rates(const TriangularArray& array, std::uint64_t n,
                                 std::optional<double> eps, std::optional<double> delta) {
  if (n == 0) throw Error(errc::invalid_argument, "feller_and_rates requires n >= 1");
  const auto rows = array.rows(n);
  const double b2 = b_n_squared(rows);
  double max_var = 0.0;
  double max_abs_mean = 0.0;
  for (const auto& row : rows) {
    max_var = std::max(max_var, row.variance());
    max_abs_mean = std::max(max_abs_mean, std::fabs(row.mean()));
  }
  ConditionReport report;
  report.n = n;
  report.b_n2 = b2;
  report.feller_max = max_var / b2;
  report.rate_sigma = static_cast<double>(n) * report.feller_max;
  report.rate_mu = std::sqrt(static_cast<double>(n)) * max_abs_mean / std::sqrt(b2);
  if (eps) report.lindeberg = lindeberg_sum(array, n, *eps);
  if (delta) report.lyapunov = lyapunov_sum(array, n, *delta);
  return report;
}

}  // namespace dslab
