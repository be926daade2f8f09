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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rng.hpp"

namespace dslab {

enum class Family { Bernoulli, Rademacher, Uniform, Normal, Exponential, Shifted, Pareto };

/// An i.i.d. sampling law with analytic moments. Value type; cheap to copy.
/// Pareto is the catalog's negative control: its mean is undefined for
/// alpha <= 1 and its variance for alpha <= 2, and every operation that needs
/// the missing moment rejects it explicitly.
class Distribution {
 public:
  static Distribution bernoulli(double p);
  static Distribution rademacher();
  static Distribution uniform(double a, double b);
  static Distribution normal(double mu, double sigma2);
  static Distribution exponential(double lambda);
  /// offset + scale * base; scale may be 0, which yields a point mass.
  static Distribution shifted(Distribution base, double offset, double scale);
  static Distribution pareto(double alpha);

  static Distribution from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;

  Family family() const noexcept { return family_; }
  std::string label() const;

  bool has_finite_mean() const noexcept;
  bool has_finite_variance() const noexcept;
  /// Throws Error(precondition) when the moment does not exist.
  double mean() const;
  double variance() const;

  bool discrete() const noexcept;
  bool bounded_support() const noexcept;
  /// sup |xi - mean| for bounded laws; throws otherwise.
  double support_radius() const;

  /// One variate; consumes a fixed number of stream words per family
  /// (inverse-CDF sampling, no rejection), so streams stay aligned.
  double draw(Stream& stream) const;

  /// i.i.d. sample of length n, deterministic in (law, n, seed).
  std::vector<double> sample(std::uint64_t n, std::uint64_t seed) const;
  void sample_into(std::uint64_t seed, std::span<double> out) const;

  /// E[(xi - mean)^2 * 1{|xi - mean| > t}], t >= 0; strict inequality at the
  /// boundary. Closed form for bernoulli/rademacher/uniform/normal, adaptive
  /// quadrature (abs tol 1e-10) otherwise. Requires finite variance.
  double truncated_second_moment(double t) const;

  /// E|xi - mean|^order for order > 2; closed form where available,
  /// quadrature fallback. Throws when the moment diverges, naming the family
  /// and order.
  double abs_central_moment(double order) const;

 private:
  Distribution() = default;

  Family family_ = Family::Rademacher;
  double p1_ = 0.0;  // p / a / mu / lambda / offset / alpha
  double p2_ = 0.0;  // b / sigma2 / scale
  std::shared_ptr<const Distribution> base_;  // shifted only

  double mean_ = 0.0;      // valid only when finite_mean_
  double variance_ = 0.0;  // valid only when finite_variance_
  bool finite_mean_ = true;
  bool finite_variance_ = true;
};

}  // namespace dslab
