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

#include "error.hpp"
#include "special.hpp"
#include "support/oracles.hpp"

using dslab::normal_cdf;
using dslab::normal_pdf;
using dslab::normal_quantile;

TEST_CASE("normal cdf hits the pinned reference points") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.96) == doctest::Approx(0.9750021048517795).epsilon(1e-12));
  CHECK(normal_cdf(-1.96) == doctest::Approx(0.0249978951482205).epsilon(1e-10));
  CHECK(normal_cdf(2.0) == doctest::Approx(0.9772498680518208).epsilon(1e-12));
  CHECK(normal_cdf(8.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(normal_cdf(-8.0) == doctest::Approx(6.22096057427178e-16).epsilon(1e-3));
}

TEST_CASE("normal cdf agrees with quadrature to 1e-10") {
  for (double x = -6.0; x <= 6.0; x += 0.25) {
    const double reference = testsupport::normal_cdf_by_quadrature(x);
    CHECK(std::fabs(normal_cdf(x) - reference) <= 1e-10);
  }
}

TEST_CASE("normal cdf symmetry identity holds to 1e-12") {
  for (double x = 0.0; x <= 8.0; x += 0.173) {
    CHECK(std::fabs(normal_cdf(-x) - (1.0 - normal_cdf(x))) <= 1e-12);
  }
}

TEST_CASE("erf matches known values") {
  CHECK(dslab::erf_rational(0.0) == 0.0);
  CHECK(dslab::erf_rational(1.0) == doctest::Approx(0.8427007929497149).epsilon(1e-14));
  CHECK(dslab::erfc_rational(1.0) == doctest::Approx(0.1572992070502851).epsilon(1e-13));
  CHECK(dslab::erf_rational(-1.0) == doctest::Approx(-0.8427007929497149).epsilon(1e-14));
}

TEST_CASE("quantile inverts the cdf") {
  for (double p = 0.001; p < 1.0; p += 0.0173) {
    const double x = normal_quantile(p);
    CHECK(normal_cdf(x) == doctest::Approx(p).epsilon(1e-11));
  }
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  // deep tails stay finite and symmetric
  const double deep = normal_quantile(1e-12);
  CHECK(deep == doctest::Approx(-7.034483825301131).epsilon(1e-12));
  CHECK(normal_quantile(1.0 - 1e-12) == doctest::Approx(-deep).epsilon(1e-6));
}

TEST_CASE("quantile rejects p outside (0,1)") {
  CHECK_THROWS_AS(normal_quantile(0.0), dslab::Error);
  CHECK_THROWS_AS(normal_quantile(1.0), dslab::Error);
  CHECK_THROWS_AS(normal_quantile(-0.5), dslab::Error);
}

TEST_CASE("pdf is the gaussian density") {
  CHECK(normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
  CHECK(normal_pdf(2.0) == doctest::Approx(0.05399096651318806).epsilon(1e-14));
}
