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

#include "exact_oracle.hpp"

#include <cmath>
#include <string>

#include "accumulate.hpp"
#include "error.hpp"

namespace dslab {

namespace {

constexpr std::uint64_t kMaxOutcomes = 10'000'000;
constexpr std::uint64_t kMaxN = 10;

// Estimator values for one outcome, deleted set given as a mask. Plain inner
// loop (no frame/validation overhead); ascending index order throughout.
struct SixValues {
  double xbar, s2, xtilde, s1t, s2t, s3t;
};

SixValues six_values(const std::vector<double>& values, const std::vector<std::uint8_t>& mask) {
  const std::size_t n = values.size();
  const double dn = static_cast<double>(n);
  double total = 0.0;
  double retained = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += values[i];
    if (!mask[i]) retained += values[i];
  }
  SixValues v;
  v.xbar = total / dn;
  v.xtilde = retained / dn;
  double s2 = 0, s1t = 0, s2t = 0, s3t = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double db = values[i] - v.xbar;
    const double dt = values[i] - v.xtilde;
    s2 += db * db;
    s1t += dt * dt;
    if (!mask[i]) {
      s2t += db * db;
      s3t += dt * dt;
    }
  }
  v.s2 = s2 / dn;
  v.s1t = s1t / dn;
  v.s2t = s2t / dn;
  v.s3t = s3t / dn;
  return v;
}

std::uint64_t checked_outcome_count(std::size_t support, std::uint64_t n) {
  std::uint64_t count = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    count *= support;
    if (count > kMaxOutcomes) {
      throw Error(errc::overflow, "enumeration state space " + std::to_string(support) + "^" +
                                      std::to_string(n) + " exceeds " +
                                      std::to_string(kMaxOutcomes) + " outcomes");
    }
  }
  return count;
}

// All deletion masks the plan induces on frames of length n, each with its
// averaging weight.
std::vector<std::vector<std::uint8_t>> plan_masks(const DeletionPlan& plan, std::uint64_t n) {
  const std::uint64_t k = k_of_n(plan.schedule, n);
  std::vector<std::vector<std::uint8_t>> masks;
  if (plan.policy == DeletionPolicy::Prefix || k == 0) {
    std::vector<std::uint8_t> mask(n, 0);
    for (std::uint64_t i = 0; i < k; ++i) mask[i] = 1;
    masks.push_back(std::move(mask));
    return masks;
  }
  if (plan.policy == DeletionPolicy::ExtremalAbs) {
    throw Error(errc::invalid_argument,
                "the exact oracle supports prefix and uniform_random policies only");
  }
  // UniformRandom: every k-subset of {0..n-1} in lexicographic order.
  std::vector<std::uint64_t> comb(k);
  for (std::uint64_t i = 0; i < k; ++i) comb[i] = i;
  for (;;) {
    std::vector<std::uint8_t> mask(n, 0);
    for (std::uint64_t idx : comb) mask[idx] = 1;
    masks.push_back(std::move(mask));
    // next combination
    std::uint64_t i = k;
    while (i > 0 && comb[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++comb[i - 1];
    for (std::uint64_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  return masks;
}

// Walks every outcome tuple; visit(values, probability) is called once per
// outcome with the running product probability.
template <typename Visit>
void for_each_outcome(const DiscreteLaw& law, std::uint64_t n, Visit visit) {
  const std::size_t support = law.atoms.size();
  checked_outcome_count(support, n);
  std::vector<std::size_t> digit(n, 0);
  std::vector<double> values(n, law.atoms[0].first);
  std::vector<double> prefix_prob(n + 1, 1.0);
  for (std::uint64_t i = 0; i < n; ++i) {
    prefix_prob[i + 1] = prefix_prob[i] * law.atoms[0].second;
  }
  for (;;) {
    visit(values, prefix_prob[n]);
    // odometer increment from the last position
    std::uint64_t pos = n;
    while (pos > 0 && digit[pos - 1] + 1 == support) --pos;
    if (pos == 0) break;
    ++digit[pos - 1];
    values[pos - 1] = law.atoms[digit[pos - 1]].first;
    prefix_prob[pos] = prefix_prob[pos - 1] * law.atoms[digit[pos - 1]].second;
    for (std::uint64_t j = pos; j < n; ++j) {
      digit[j] = 0;
      values[j] = law.atoms[0].first;
      prefix_prob[j + 1] = prefix_prob[j] * law.atoms[0].second;
    }
  }
}

void check_n(std::uint64_t n) {
  if (n == 0 || n > kMaxN) {
    throw Error(errc::invalid_argument, "oracle enumeration requires 1 <= n <= 10");
  }
}

}  // namespace

DiscreteLaw DiscreteLaw::make(std::vector<std::pair<double, double>> atoms) {
  if (atoms.empty() || atoms.size() > 6) {
    throw Error(errc::invalid_argument, "discrete law requires between 1 and 6 atoms");
  }
  NeumaierSum total;
  for (const auto& [value, prob] : atoms) {
    if (!(prob > 0.0)) throw Error(errc::invalid_argument, "atom probabilities must be positive");
    if (!std::isfinite(value)) throw Error(errc::invalid_argument, "atom values must be finite");
    total.add(prob);
  }
  if (std::fabs(total.value() - 1.0) > 1e-12) {
    throw Error(errc::invalid_argument, "atom probabilities must sum to 1 within 1e-12");
  }
  DiscreteLaw law;
  law.atoms = std::move(atoms);
  return law;
}

DiscreteLaw DiscreteLaw::from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("atoms") || !spec["atoms"].is_array()) {
    throw Error(errc::validation, "law spec must be an object with an \"atoms\" array");
  }
  std::vector<std::pair<double, double>> atoms;
  for (const auto& atom : spec["atoms"]) {
    if (!atom.is_array() || atom.size() != 2 || !atom[0].is_number() || !atom[1].is_number()) {
      throw Error(errc::validation, "each atom must be a [value, probability] pair");
    }
    atoms.emplace_back(atom[0].get<double>(), atom[1].get<double>());
  }
  try {
    return make(std::move(atoms));
  } catch (const Error& e) {
    throw Error(errc::validation, e.what());
  }
}

nlohmann::json DiscreteLaw::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [value, prob] : atoms) arr.push_back({value, prob});
  return {{"atoms", arr}};
}

double DiscreteLaw::mean() const {
  NeumaierSum m;
  for (const auto& [value, prob] : atoms) m.add(value * prob);
  return m.value();
}

double DiscreteLaw::variance() const {
  const double mu = mean();
  NeumaierSum v;
  for (const auto& [value, prob] : atoms) v.add((value - mu) * (value - mu) * prob);
  return v.value();
}

ExactMoments enumerate_expectations(const DiscreteLaw& law, std::uint64_t n,
                                    const DeletionPlan& plan) {
  check_n(n);
  const auto masks = plan_masks(plan, n);
  const double mask_weight = 1.0 / static_cast<double>(masks.size());

  NeumaierSum e_xbar, e_s2, e_xtilde, e_s1t, e_s2t, e_s3t;
  for_each_outcome(law, n, [&](const std::vector<double>& values, double prob) {
    for (const auto& mask : masks) {
      const SixValues v = six_values(values, mask);
      const double w = prob * mask_weight;
      e_xbar.add(w * v.xbar);
      e_s2.add(w * v.s2);
      e_xtilde.add(w * v.xtilde);
      e_s1t.add(w * v.s1t);
      e_s2t.add(w * v.s2t);
      e_s3t.add(w * v.s3t);
    }
  });
  ExactMoments m;
  m.e_xbar = e_xbar.value();
  m.e_s2 = e_s2.value();
  m.e_xtilde = e_xtilde.value();
  m.e_s1t = e_s1t.value();
  m.e_s2t = e_s2t.value();
  m.e_s3t = e_s3t.value();
  return m;
}

double exact_tail_prob(const DiscreteLaw& law, std::uint64_t n, const DeletionPlan& plan,
                       double eps) {
  check_n(n);
  if (!(eps >= 0.0)) throw Error(errc::invalid_argument, "exact_tail_prob requires eps >= 0");
  const auto masks = plan_masks(plan, n);
  const double mask_weight = 1.0 / static_cast<double>(masks.size());
  const double target = law.mean();
  const double dn = static_cast<double>(n);

  NeumaierSum tail;
  for_each_outcome(law, n, [&](const std::vector<double>& values, double prob) {
    for (const auto& mask : masks) {
      double retained = 0.0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (!mask[i]) retained += values[i];
      }
      const double xtilde = retained / dn;
      if (std::fabs(xtilde - target) >= eps) tail.add(prob * mask_weight);
    }
  });
  return tail.value();
}

nlohmann::json ExactMoments::to_json() const {
  return {{"e_xbar", e_xbar}, {"e_s2", e_s2},   {"e_xtilde", e_xtilde},
          {"e_s1t", e_s1t},   {"e_s2t", e_s2t}, {"e_s3t", e_s3t}};
}

}  // namespace dslab
