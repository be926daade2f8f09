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

#include "special.hpp"

#include <cmath>

#include "error.hpp"

namespace dslab {

namespace {

// CALERF coefficient tables (Cody 1969).
constexpr double kA[5] = {3.1611237438705656, 113.864154151050156, 377.485237685302021,
                          3209.37758913846947, .185777706184603153};
constexpr double kB[4] = {23.6012909523441209, 244.024637934444173, 1282.61652607737228,
                          2844.23683343917062};
constexpr double kC[9] = {.564188496988670089, 8.88314979438837594, 66.1191906371416295,
                          298.635138197400131, 881.95222124176909,  1712.04761263407058,
                          2051.07837782607147, 1230.33935479799725, 2.15311535474403846e-8};
constexpr double kD[8] = {15.7449261107098347, 117.693950891312499, 537.181101862009858,
                          1621.38957456669019, 3290.79923573345963, 4362.61909014324716,
                          3439.36767414372164, 1230.33935480374942};
constexpr double kP[6] = {.305326634961232344, .360344899949804439, .125781726111229246,
                          .0160837851487422766, 6.58749161529837803e-4, .0163153871373020978};
constexpr double kQ[5] = {2.56852019228982242, 1.87295284992346047, .527905102951428412,
                          .0605183413124413191, .00233520497626869185};

constexpr double kSqrPi = 0.56418958354775628695;  // 1/sqrt(pi)
constexpr double kThresh = 0.46875;
constexpr double kXSmall = 1.11e-16;
constexpr double kXBig = 26.543;

// jint = 0 -> erf, jint = 1 -> erfc.
double calerf(double x, int jint) {
  const double y = std::fabs(x);
  double result;
  if (y <= kThresh) {
    double ysq = 0.0;
    if (y > kXSmall) ysq = y * y;
    double xnum = kA[4] * ysq;
    double xden = ysq;
    for (int i = 0; i < 3; ++i) {
      xnum = (xnum + kA[i]) * ysq;
      xden = (xden + kB[i]) * ysq;
    }
    result = x * (xnum + kA[3]) / (xden + kB[3]);
    if (jint != 0) result = 1.0 - result;
    return result;
  }
  if (y <= 4.0) {
    double xnum = kC[8] * y;
    double xden = y;
    for (int i = 0; i < 7; ++i) {
      xnum = (xnum + kC[i]) * y;
      xden = (xden + kD[i]) * y;
    }
    result = (xnum + kC[7]) / (xden + kD[7]);
    // exp(-y^2) split as exp(-ysq^2)*exp(-del) for accuracy near the
    // underflow region; ysq is y truncated to 1/16ths.
    const double ysq = std::trunc(y * 16.0) / 16.0;
    const double del = (y - ysq) * (y + ysq);
    result = std::exp(-ysq * ysq) * std::exp(-del) * result;
  } else {
    result = 0.0;
    if (y < kXBig) {
      const double ysq = 1.0 / (y * y);
      double xnum = kP[5] * ysq;
      double xden = ysq;
      for (int i = 0; i < 4; ++i) {
        xnum = (xnum + kP[i]) * ysq;
        xden = (xden + kQ[i]) * ysq;
      }
      result = ysq * (xnum + kP[4]) / (xden + kQ[4]);
      result = (kSqrPi - result) / y;
      const double trunc16 = std::trunc(y * 16.0) / 16.0;
      const double del = (y - trunc16) * (y + trunc16);
      result = std::exp(-trunc16 * trunc16) * std::exp(-del) * result;
    }
  }
  if (jint == 0) {
    result = (0.5 - result) + 0.5;
    if (x < 0.0) result = -result;
  } else {
    if (x < 0.0) result = 2.0 - result;
  }
  return result;
}

}  // namespace

double erf_rational(double x) { return calerf(x, 0); }

double erfc_rational(double x) { return calerf(x, 1); }

double normal_pdf(double x) {
  constexpr double kInvSqrt2Pi = 0.3989422804014326779;
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  return 0.5 * erfc_rational(-x * kInvSqrt2);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(errc::invalid_argument, "normal_quantile requires p in (0, 1)");
  }
  // AS 241 PPND16 coefficients.
  constexpr double a[8] = {3.3871328727963666080e0,  1.3314166789178437745e+2,
                           1.9715909503065514427e+3, 1.3731693765509461125e+4,
                           4.5921953931549871457e+4, 6.7265770927008700853e+4,
                           3.3430575583588128105e+4, 2.5090809287301226727e+3};
  constexpr double b[7] = {4.2313330701600911252e+1, 6.8718700749205790830e+2,
                           5.3941960214247511077e+3, 2.1213794301586595867e+4,
                           3.9307895800092710610e+4, 2.8729085735721942674e+4,
                           5.2264952788528545610e+3};
  constexpr double c[8] = {1.42343711074968357734e0,  4.63033784615654529590e0,
                           5.76949722146069140550e0,  3.64784832476320460504e0,
                           1.27045825245236838258e0,  2.41780725177450611770e-1,
                           2.27238449892691845833e-2, 7.74545014278341407640e-4};
  constexpr double d[7] = {2.05319162663775882187e0,  1.67638483018380384940e0,
                           6.89767334985100004550e-1, 1.48103976427480074590e-1,
                           1.51986665636164571966e-2, 5.47593808499534494600e-4,
                           1.05075007164441684324e-9};
  constexpr double e[8] = {6.65790464350110377720e0,  5.46378491116411436990e0,
                           1.78482653991729133580e0,  2.96560571828504891230e-1,
                           2.65321895265761230930e-2, 1.24266094738807843860e-3,
                           2.71155556874348757815e-5, 2.01033439929228813265e-7};
  constexpr double f[7] = {5.99832206555887937690e-1, 1.36929880922735805310e-1,
                           1.48753612908506148525e-2, 7.86869131145613259100e-4,
                           1.84631831751005468180e-5, 1.42151175831644588870e-7,
                           2.04426310338993978564e-15};

  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        ((((((a[7] * r + a[6]) * r + a[5]) * r + a[4]) * r + a[3]) * r + a[2]) * r + a[1]) * r +
        a[0];
    const double den =
        ((((((b[6] * r + b[5]) * r + b[4]) * r + b[3]) * r + b[2]) * r + b[1]) * r + b[0]) * r +
        1.0;
    return q * num / den;
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        ((((((c[7] * r + c[6]) * r + c[5]) * r + c[4]) * r + c[3]) * r + c[2]) * r + c[1]) * r +
        c[0];
    const double den =
        ((((((d[6] * r + d[5]) * r + d[4]) * r + d[3]) * r + d[2]) * r + d[1]) * r + d[0]) * r +
        1.0;
    x = num / den;
  } else {
    r -= 5.0;
    const double num =
        ((((((e[7] * r + e[6]) * r + e[5]) * r + e[4]) * r + e[3]) * r + e[2]) * r + e[1]) * r +
        e[0];
    const double den =
        ((((((f[6] * r + f[5]) * r + f[4]) * r + f[3]) * r + f[2]) * r + f[1]) * r + f[0]) * r +
        1.0;
    x = num / den;
  }
  return q < 0.0 ? -x : x;
}

}  // namespace dslab
