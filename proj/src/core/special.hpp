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

namespace dslab {

// Rational Chebyshev approximations of the error function after W. J. Cody,
// Math. Comp. 23 (1969) 631-638 (the SPECFUN/CALERF scheme). Absolute error
// below 1e-16 in double precision, well inside the 1e-10 contract of the
// normal CDF built on top.
double erf_rational(double x);
double erfc_rational(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal CDF, Phi(x) = erfc(-x/sqrt(2))/2; |error| <= 1e-10.
double normal_cdf(double x);

/// Inverse standard normal CDF for p in (0, 1), Wichura's algorithm AS 241
/// (PPND16 rational approximations, ~1e-16 relative accuracy). Exactly one
/// branch per call and no iteration, which keeps sampler streams aligned.
/// Throws Error(invalid_argument) outside (0, 1).
double normal_quantile(double p);

}  // namespace dslab
