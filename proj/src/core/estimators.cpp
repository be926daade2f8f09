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

#include "estimators.hpp"

#include "accumulate.hpp"
#include "error.hpp"

namespace dslab {

SampleFrame SampleFrame::with_deleted(std::vector<double> values,
                                      std::span<const std::uint64_t> deleted_indices) {
  SampleFrame frame;
  frame.deleted.assign(values.size(), 0);
  for (std::uint64_t idx : deleted_indices) {
    if (idx >= values.size()) {
      throw Error(errc::invalid_argument, "deleted index out of range");
    }
    frame.deleted[idx] = 1;
  }
  frame.values = std::move(values);
  frame.validate();
  return frame;
}

std::uint64_t SampleFrame::k() const noexcept {
  std::uint64_t count = 0;
  for (std::uint8_t d : deleted) count += d;
  return count;
}

void SampleFrame::validate() const {
  if (values.empty()) throw Error(errc::invalid_argument, "frame must hold at least one value");
  if (deleted.size() != values.size()) {
    throw Error(errc::invalid_argument, "frame mask length must match values length");
  }
  if (k() >= values.size()) {
    throw Error(errc::invalid_argument, "deletion must leave at least one item");
  }
}

namespace {

// Retained and deleted sums in one ascending pass.
struct PartSums {
  double retained;
  double deleted;
};

PartSums part_sums(const SampleFrame& frame) {
  NeumaierSum retained;
  NeumaierSum deleted;
  for (std::size_t i = 0; i < frame.values.size(); ++i) {
    if (frame.deleted[i]) {
      deleted.add(frame.values[i]);
    } else {
      retained.add(frame.values[i]);
    }
  }
  return {retained.value(), deleted.value()};
}

}  // namespace

double deleting_partial_sum(const SampleFrame& frame) {
  frame.validate();
  return part_sums(frame).retained;
}

double deleted_part_sum(const SampleFrame& frame) {
  frame.validate();
  return part_sums(frame).deleted;
}

EstimatorReport estimator_report(const SampleFrame& frame) {
  frame.validate();
  const std::uint64_t n = frame.n();
  const double dn = static_cast<double>(n);
  const PartSums sums = part_sums(frame);

  EstimatorReport r;
  r.n = n;
  r.k = frame.k();
  r.xbar = (sums.retained + sums.deleted) / dn;
  r.xtilde = sums.retained / dn;

  NeumaierSum s2, s1t, s2t, s3t;
  for (std::size_t i = 0; i < frame.values.size(); ++i) {
    const double v = frame.values[i];
    const double db = v - r.xbar;
    const double dt = v - r.xtilde;
    s2.add(db * db);
    s1t.add(dt * dt);
    if (!frame.deleted[i]) {
      s2t.add(db * db);
      s3t.add(dt * dt);
    }
  }
  r.s2 = s2.value() / dn;
  r.s1t = s1t.value() / dn;
  r.s2t = s2t.value() / dn;
  r.s3t = s3t.value() / dn;
  return r;
}

ExpansionResiduals expansion_identities(const SampleFrame& frame) {
  const EstimatorReport r = estimator_report(frame);
  const double dn = static_cast<double>(r.n);
  const double kf = static_cast<double>(r.k) / dn;

  NeumaierSum sq_all, sq_retained;
  for (std::size_t i = 0; i < frame.values.size(); ++i) {
    const double v2 = frame.values[i] * frame.values[i];
    sq_all.add(v2);
    if (!frame.deleted[i]) sq_retained.add(v2);
  }
  const double m2_all = sq_all.value() / dn;
  const double m2_retained = sq_retained.value() / dn;

  ExpansionResiduals res;
  res.s1t = r.s1t - (m2_all - 2.0 * r.xtilde * r.xbar + r.xtilde * r.xtilde);
  res.s2t = r.s2t - (m2_retained - 2.0 * r.xtilde * r.xbar + (1.0 - kf) * r.xbar * r.xbar);
  res.s3t = r.s3t - (m2_retained - (1.0 + kf) * r.xtilde * r.xtilde);
  return res;
}

nlohmann::json EstimatorReport::to_json() const {
  return {{"xbar", xbar}, {"s2", s2},   {"xtilde", xtilde}, {"s1t", s1t},
          {"s2t", s2t},   {"s3t", s3t}, {"n", n},           {"k", k}};
}

const char* s3_class_name(S3Class c) {
  switch (c) {
    case S3Class::BelowOrEqual:
      return "below_or_equal";
    case S3Class::Above:
      return "above";
    case S3Class::MuZeroBelow:
      return "mu_zero_below";
  }
  return "?";
}

BiasReport expected_values(std::uint64_t n, std::uint64_t k, double mu, double sigma2) {
  if (n < 2 || k >= n) {
    throw Error(errc::invalid_argument, "expected_values requires n >= 2 and 0 <= k < n");
  }
  if (!(sigma2 >= 0.0)) {
    throw Error(errc::invalid_argument, "expected_values requires sigma2 >= 0");
  }
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);

  BiasReport r;
  r.e_xtilde = (1.0 - dk / dn) * mu;
  r.e_s1t = (1.0 - 1.0 / dn + dk / (dn * dn)) * sigma2 + (dk * dk) / (dn * dn) * mu * mu;
  r.e_s2t = (1.0 - 1.0 / dn - dk / dn + dk / (dn * dn)) * sigma2;
  r.e_s3t = (1.0 - 1.0 / dn - dk / dn + (dk * dk) / (dn * dn * dn)) * sigma2 +
            (1.0 - dk / dn) * ((dk * dk) / (dn * dn)) * mu * mu;
  r.e_s2 = (1.0 - 1.0 / dn) * sigma2;

  if (mu != 0.0) {
    r.threshold = dn - (dn * dn - 1.0) * sigma2 / (mu * mu);
  }
  if (k == 0) {
    // Nothing deleted: every expectation coincides with e_s2.
    r.s3_class = S3Class::BelowOrEqual;
  } else if (mu == 0.0) {
    r.s3_class = S3Class::MuZeroBelow;
  } else {
    // Sign of e_s3t - e_s2 = (k/n^3)[(k - n^2) sigma^2 + (n - k) k mu^2],
    // compared multiplicatively so exact-equality boundaries stay exact in
    // floating point.
    const bool below_or_equal = (dn - dk) * dk * mu * mu <= (dn * dn - dk) * sigma2;
    r.s3_class = below_or_equal ? S3Class::BelowOrEqual : S3Class::Above;
  }
  return r;
}

nlohmann::json BiasReport::to_json() const {
  nlohmann::json j{{"e_xtilde", e_xtilde}, {"e_s1t", e_s1t}, {"e_s2t", e_s2t},
                   {"e_s3t", e_s3t},       {"e_s2", e_s2},   {"s3_class", s3_class_name(s3_class)}};
  j["threshold"] = threshold ? nlohmann::json(*threshold) : nlohmann::json();
  return j;
}

}  // namespace dslab
