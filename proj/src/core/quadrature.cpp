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

#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "error.hpp"

namespace dslab {

namespace {

// 15-point Kronrod nodes/weights on [-1, 1] and the embedded 7-point Gauss
// weights (QUADPACK dqk15 constants). Nodes are symmetric; only x >= 0 listed.
constexpr double kXgk[8] = {0.991455371120812639206854697526329,
                            0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926,
                            0.741531185599394439863864773280788,
                            0.586087235467691130294144838258730,
                            0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245,
                            0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970,
                            0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518,
                            0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550,
                            0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649,
                            0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082,
                           0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975,
                           0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
};

Panel evaluate(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double resg = 0.0;
  double resk = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double dx = half * kXgk[j];
    double fsum;
    if (j == 7) {
      fsum = f(center);
    } else {
      fsum = f(center - dx) + f(center + dx);
    }
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;  // odd Kronrod indices are Gauss nodes
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = resk * half;
  p.error = std::fabs((resk - resg) * half);
  return p;
}

struct WorseError {
  bool operator()(const Panel& lhs, const Panel& rhs) const { return lhs.error < rhs.error; }
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_intervals) {
  if (!(a <= b)) throw Error(errc::invalid_argument, "integrate: requires a <= b");
  if (a == b) return 0.0;

  std::priority_queue<Panel, std::vector<Panel>, WorseError> queue;
  queue.push(evaluate(f, a, b));
  double total_error = queue.top().error;
  int panels = 1;
  while (total_error > abs_tol && panels < max_intervals) {
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval no longer splittable in double precision; keep as is.
      worst.error = 0.0;
      queue.push(worst);
      continue;
    }
    Panel left = evaluate(f, worst.a, mid);
    Panel right = evaluate(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
  }
  if (total_error > abs_tol) {
    throw Error(errc::internal, "integrate: failed to reach requested tolerance");
  }
  // Sum panel values smallest-magnitude first for a stable, order-independent
  // result given the same panel set.
  std::vector<double> parts;
  parts.reserve(static_cast<std::size_t>(panels));
  while (!queue.empty()) {
    parts.push_back(queue.top().value);
    queue.pop();
  }
  std::sort(parts.begin(), parts.end(),
            [](double x, double y) { return std::fabs(x) < std::fabs(y); });
  double sum = 0.0;
  for (double v : parts) sum += v;
  return sum;
}

}  // namespace dslab
