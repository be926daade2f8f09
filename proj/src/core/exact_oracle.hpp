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
#include <utility>
#include <vector>

#include <json.hpp>

#include "deletion.hpp"

namespace dslab {

/// A finite-support law for brute-force enumeration: at most 6 atoms with
/// strictly positive probabilities summing to 1 within 1e-12.
struct DiscreteLaw {
  std::vector<std::pair<double, double>> atoms;  // (value, probability)

  static DiscreteLaw make(std::vector<std::pair<double, double>> atoms);
  static DiscreteLaw from_json(const nlohmann::json& spec);  // {"atoms":[[v,p],...]}
  nlohmann::json to_json() const;

  double mean() const;
  double variance() const;
};

struct ExactMoments {
  double e_xbar = 0, e_s2 = 0, e_xtilde = 0, e_s1t = 0, e_s2t = 0, e_s3t = 0;

  nlohmann::json to_json() const;
};

/// Exact expectations of the six estimators over every outcome tuple of n
/// i.i.d. draws from the law, weighted by product probabilities. Prefix uses
/// the fixed deleted set {1..k}; UniformRandom averages over all C(n,k)
/// subsets (equal to Prefix for these i.i.d. inputs by exchangeability).
/// ExtremalAbs is outside the oracle contract and is rejected: its estimator
/// laws are order-statistic dependent and the index-blind expectations being
/// validated do not apply.
/// Throws Error(overflow) when support^n exceeds 10^7 outcomes; n <= 10.
ExactMoments enumerate_expectations(const DiscreteLaw& law, std::uint64_t n,
                                    const DeletionPlan& plan);

/// Exact P(|xtilde - mean| >= eps) by the same enumeration.
double exact_tail_prob(const DiscreteLaw& law, std::uint64_t n, const DeletionPlan& plan,
                       double eps);

}  // namespace dslab
