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

#include "conditions.hpp"
#include "error.hpp"

using dslab::Distribution;
using dslab::TriangularArray;
using dslab::feller_and_rates;
using dslab::lindeberg_sum;
using dslab::lyapunov_sum;

TEST_CASE("lindeberg: bounded law is exactly zero past its support radius") {
  const auto rademacher = TriangularArray::iid(Distribution::rademacher());
  // eps * B_n = 0.5 * sqrt(5) > 1
  CHECK(lindeberg_sum(rademacher, 5, 0.5) == 0.0);
  for (std::uint64_t n : {2ull, 10ull, 100ull, 10000ull}) {
    const double eps_on_boundary = 1.0 / std::sqrt(static_cast<double>(n));
    CHECK(lindeberg_sum(rademacher, n, eps_on_boundary * 1.01) == 0.0);
    CHECK(lindeberg_sum(rademacher, n, eps_on_boundary * 0.99) == 1.0);
  }
}

TEST_CASE("lindeberg: iid normal collapses to the truncated second moment") {
  const auto normal = TriangularArray::iid(Distribution::normal(0.0, 1.0));
  CHECK(lindeberg_sum(normal, 400, 0.1) ==
        doctest::Approx(0.26146412994911067).epsilon(1e-8));
  // grows t = eps*sqrt(n): strictly decreasing in n
  CHECK(lindeberg_sum(normal, 40000, 0.1) < lindeberg_sum(normal, 400, 0.1));
}

TEST_CASE("lindeberg is non-increasing in eps") {
  const auto arrays = {TriangularArray::iid(Distribution::normal(0.0, 1.0)),
                       TriangularArray::iid(Distribution::exponential(1.0)),
                       TriangularArray::iid(Distribution::bernoulli(0.3))};
  for (const auto& array : arrays) {
    for (std::uint64_t n : {10ull, 100ull}) {
      double prev = lindeberg_sum(array, n, 0.001);
      for (double eps : {0.01, 0.1, 0.5, 1.0}) {
        const double cur = lindeberg_sum(array, n, eps);
        CHECK(cur <= prev + 1e-12);
        prev = cur;
      }
    }
  }
}

TEST_CASE("lyapunov: rademacher third-moment case is exactly n^(-1/2)") {
  const auto rademacher = TriangularArray::iid(Distribution::rademacher());
  CHECK(lyapunov_sum(rademacher, 100, 1.0) == 0.1);
  CHECK(lyapunov_sum(rademacher, 10000, 1.0) == 0.01);
}

TEST_CASE("lyapunov: single row reduces to the standardized third moment") {
  const auto bern = TriangularArray::iid(Distribution::bernoulli(0.3));
  const double third = Distribution::bernoulli(0.3).abs_central_moment(3.0);
  const double sigma3 = std::pow(0.3 * 0.7, 1.5);
  CHECK(lyapunov_sum(bern, 1, 1.0) == doctest::Approx(third / sigma3).epsilon(1e-12));
}

TEST_CASE("lyapunov dominates lindeberg (Markov bound, delta = 1)") {
  const auto catalog = {Distribution::bernoulli(0.3), Distribution::bernoulli(0.5),
                        Distribution::rademacher(),   Distribution::uniform(0.0, 1.0),
                        Distribution::normal(0.0, 1.0), Distribution::normal(2.0, 1.0),
                        Distribution::exponential(1.0)};
  for (const auto& dist : catalog) {
    CAPTURE(dist.label());
    const auto array = TriangularArray::iid(dist);
    for (std::uint64_t n : {100ull, 1000ull, 10000ull}) {
      const double lyap = lyapunov_sum(array, n, 1.0);
      for (double eps : dslab::kDefaultLindebergEps) {
        CHECK(lindeberg_sum(array, n, eps) <= lyap / eps + 1e-12);
      }
    }
  }
}

TEST_CASE("lyapunov rejects divergent moments") {
  const auto heavy = TriangularArray::iid(Distribution::pareto(2.5));
  CHECK_THROWS_AS(lyapunov_sum(heavy, 10, 1.0), dslab::Error);  // needs order 3 > alpha
}

TEST_CASE("feller and rate diagnostics") {
  const auto iid = TriangularArray::iid(Distribution::uniform(0.0, 1.0));
  const auto r100 = feller_and_rates(iid, 100);
  CHECK(r100.feller_max == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(r100.rate_sigma == doctest::Approx(1.0).epsilon(1e-14));

  const auto normal3 = TriangularArray::iid(Distribution::normal(3.0, 1.0));
  CHECK(feller_and_rates(normal3, 100).rate_mu == doctest::Approx(3.0).epsilon(1e-14));

  // row variances 1, 2, 3, 4 -> B_4^2 = 10
  const auto growing = TriangularArray::from_json(nlohmann::json::parse(
      R"({"kind":"normal_growing_variance","mu":0,"scale":1})"));
  const auto r4 = feller_and_rates(growing, 4);
  CHECK(r4.b_n2 == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(r4.feller_max == doctest::Approx(0.4).epsilon(1e-14));

  const auto full = feller_and_rates(iid, 400, 0.1, 1.0);
  REQUIRE(full.lindeberg.has_value());
  REQUIRE(full.lyapunov.has_value());
  CHECK(*full.lindeberg == lindeberg_sum(iid, 400, 0.1));
  CHECK(*full.lyapunov == lyapunov_sum(iid, 400, 1.0));
}

TEST_CASE("cycle arrays mix their rows") {
  const auto cycle = TriangularArray::cycle(
      {Distribution::normal(1.0, 1.0), Distribution::normal(-1.0, 4.0)});
  const auto r = feller_and_rates(cycle, 4);
  CHECK(r.b_n2 == doctest::Approx(10.0).epsilon(1e-14));   // 1+4+1+4
  CHECK(r.feller_max == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(r.rate_mu == doctest::Approx(2.0 * 1.0 / std::sqrt(10.0)).epsilon(1e-14));
}

TEST_CASE("degenerate arrays are rejected") {
  const auto point = TriangularArray::iid(
      Distribution::shifted(Distribution::rademacher(), 1.0, 0.0));
  CHECK_THROWS_WITH_AS(feller_and_rates(point, 5), doctest::Contains("strictly positive"),
                       dslab::Error);
  CHECK_THROWS_AS(lindeberg_sum(point, 5, 0.1), dslab::Error);
}
