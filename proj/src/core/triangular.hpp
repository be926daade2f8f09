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
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "distribution.hpp"

namespace dslab {

/// A sequence of independent, not necessarily identical laws: row i (1-based)
/// has its own distribution with finite mean and variance.
class TriangularArray {
 public:
  static TriangularArray iid(Distribution d, std::string description = {});
  /// Rows cycle through the given laws: row i uses dists[(i-1) % size].
  static TriangularArray cycle(std::vector<Distribution> dists, std::string description = {});
  /// Arbitrary row rule for programmatic use; not JSON-serializable.
  static TriangularArray of(std::function<Distribution(std::uint64_t)> row,
                            std::string description);

  /// Kinds: {"kind":"iid","dist":...}, {"kind":"cycle","dists":[...]},
  /// {"kind":"normal_growing_variance","mu":m,"scale":s} with var_i = s*i.
  static TriangularArray from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;

  Distribution row(std::uint64_t i) const;  // i >= 1
  /// Rows 1..n materialized once; experiments reuse this across replications.
  std::vector<Distribution> rows(std::uint64_t n) const;

  const std::string& description() const noexcept { return description_; }

 private:
  std::function<Distribution(std::uint64_t)> row_;
  std::string description_;
  nlohmann::json spec_;  // null when not constructed from JSON
};

/// Sum of row variances B_n^2 (compensated); throws Error(precondition) if a
/// row variance is infinite or the total is not strictly positive.
double b_n_squared(const std::vector<Distribution>& rows);

/// Sum of row means; throws if a row mean is undefined.
double mean_sum(const std::vector<Distribution>& rows);

}  // namespace dslab
