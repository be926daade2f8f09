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

#include "triangular.hpp"

#include <utility>

#include "accumulate.hpp"
#include "error.hpp"

namespace dslab {

TriangularArray TriangularArray::iid(Distribution d, std::string description) {
  TriangularArray a;
  if (description.empty()) description = "iid " + d.label();
  a.spec_ = {{"kind", "iid"}, {"dist", d.to_json()}};
  a.row_ = [d = std::move(d)](std::uint64_t) { return d; };
  a.description_ = std::move(description);
  return a;
}

TriangularArray TriangularArray::cycle(std::vector<Distribution> dists, std::string description) {
  if (dists.empty()) throw Error(errc::invalid_argument, "cycle requires at least one law");
  TriangularArray a;
  nlohmann::json spec_dists = nlohmann::json::array();
  for (const auto& d : dists) spec_dists.push_back(d.to_json());
  a.spec_ = {{"kind", "cycle"}, {"dists", spec_dists}};
  if (description.empty()) description = "cycle of " + std::to_string(dists.size()) + " laws";
  a.row_ = [dists = std::move(dists)](std::uint64_t i) { return dists[(i - 1) % dists.size()]; };
  a.description_ = std::move(description);
  return a;
}

TriangularArray TriangularArray::of(std::function<Distribution(std::uint64_t)> row,
                                    std::string description) {
  TriangularArray a;
  a.row_ = std::move(row);
  a.description_ = std::move(description);
  return a;
}

TriangularArray TriangularArray::from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string()) {
    throw Error(errc::validation, "array spec must be an object with a \"kind\" string");
  }
  const std::string kind = spec["kind"].get<std::string>();
  if (kind == "iid") {
    if (!spec.contains("dist")) throw Error(errc::validation, "iid array requires \"dist\"");
    return iid(Distribution::from_json(spec["dist"]));
  }
  if (kind == "cycle") {
    if (!spec.contains("dists") || !spec["dists"].is_array() || spec["dists"].empty()) {
      throw Error(errc::validation, "cycle array requires a nonempty \"dists\" list");
    }
    std::vector<Distribution> dists;
    for (const auto& d : spec["dists"]) dists.push_back(Distribution::from_json(d));
    return cycle(std::move(dists));
  }
  if (kind == "normal_growing_variance") {
    const double mu = spec.value("mu", 0.0);
    const double scale = spec.value("scale", 1.0);
    if (!(scale > 0.0)) {
      throw Error(errc::validation, "normal_growing_variance requires scale > 0");
    }
    TriangularArray a;
    a.spec_ = {{"kind", "normal_growing_variance"}, {"mu", mu}, {"scale", scale}};
    a.row_ = [mu, scale](std::uint64_t i) {
      return Distribution::normal(mu, scale * static_cast<double>(i));
    };
    a.description_ = "normal rows with variance " + std::to_string(scale) + "*i";
    return a;
  }
  throw Error(errc::validation, "unknown array kind \"" + kind +
                                    "\"; valid kinds: iid, cycle, normal_growing_variance");
}

nlohmann::json TriangularArray::to_json() const {
  if (spec_.is_null()) {
    throw Error(errc::invalid_argument, "array built from a custom row rule is not serializable");
  }
  return spec_;
}

Distribution TriangularArray::row(std::uint64_t i) const {
  if (i == 0) throw Error(errc::invalid_argument, "array rows are 1-based");
  return row_(i);
}

std::vector<Distribution> TriangularArray::rows(std::uint64_t n) const {
  std::vector<Distribution> out;
  out.reserve(n);
  for (std::uint64_t i = 1; i <= n; ++i) out.push_back(row_(i));
  return out;
}

double b_n_squared(const std::vector<Distribution>& rows) {
  NeumaierSum sum;
  for (const auto& d : rows) sum.add(d.variance());
  const double b2 = sum.value();
  if (!(b2 > 0.0)) {
    throw Error(errc::precondition, "B_n^2 must be strictly positive");
  }
  return b2;
}

double mean_sum(const std::vector<Distribution>& rows) {
  NeumaierSum sum;
  for (const auto& d : rows) sum.add(d.mean());
  return sum.value();
}

}  // namespace dslab
