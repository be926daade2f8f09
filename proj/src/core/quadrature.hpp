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

#include <functional>

namespace dslab {

/// Globally adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
/// Repeatedly bisects the interval with the largest error estimate until the
/// total estimated error drops below abs_tol. Nodes are strictly interior, so
/// integrable endpoint singularities are handled. Deterministic.
/// Throws Error(internal) if the budget of max_intervals is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_intervals = 4000);

}  // namespace dslab
