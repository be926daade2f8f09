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

// Test-only reference computations, deliberately independent of the library
// implementation paths they are used to check: recursive adaptive Simpson
// instead of Gauss-Kronrod, and a quadrature-based normal CDF instead of the
// rational error-function approximation.

#pragma once

#include <cmath>
#include <functional>

namespace testsupport {

inline double simpson_rule(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_rule(f, a, m, fa, flm, fm);
  const double right = simpson_rule(f, m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 48) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = simpson_rule(f, a, b, fa, fm, fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// Phi(x) by integrating the density from 0, plus one half.
inline double normal_cdf_by_quadrature(double x) {
  auto density = [](double t) {
    return 0.3989422804014326779 * std::exp(-0.5 * t * t);
  };
  if (x >= 0.0) return 0.5 + adaptive_simpson(density, 0.0, x);
  return 0.5 - adaptive_simpson(density, x, 0.0);
}

}  // namespace testsupport
