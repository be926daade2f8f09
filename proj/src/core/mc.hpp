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

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "deletion.hpp"
#include "distribution.hpp"
#include "triangular.hpp"

namespace dslab {

// Seeded Monte Carlo experiments around the deleting-items limit theorems.
// Replication r of experiment E always draws from the stream derived as
// (master_seed, label(E), r); aggregation is over per-replication slots in
// index order, so results are bit-identical for any worker count.

enum class McDiagnostic { TailProb, BoundedFunctional, PathProxy, KSDistance, LogScaled, StatMean };

const char* diagnostic_name(McDiagnostic d);

struct ConvergenceCurve {
  std::vector<std::uint64_t> n_grid;
  std::vector<double> estimate;
  std::vector<double> std_error;
  McDiagnostic diagnostic = McDiagnostic::TailProb;
  nlohmann::json metadata;  // experiment descriptor (label, params, seed)

  nlohmann::json to_json() const;
};

struct McOptions {
  int workers = 1;
};

/// Tail probability P(|xtilde - target| >= eps) over the n-grid, where target
/// is the law's mean (i.i.d. case) or the average of the row means (array
/// case). Weak-law evidence: the curve must fall to 0 when k(n)/n -> 0.
ConvergenceCurve wlln_experiment(const Distribution& dist, const DeletionPlan& plan, double eps,
                                 std::span<const std::uint64_t> n_grid, std::uint64_t reps,
                                 std::uint64_t seed, const McOptions& options = {});
ConvergenceCurve wlln_experiment(const TriangularArray& array, const DeletionPlan& plan,
                                 double eps, std::span<const std::uint64_t> n_grid,
                                 std::uint64_t reps, std::uint64_t seed,
                                 const McOptions& options = {});

/// Monte Carlo mean of D^2/(1+D^2) with D = xtilde - mean; the bounded
/// functional whose vanishing is equivalent to the weak law.
ConvergenceCurve bounded_functional(const Distribution& dist, const DeletionPlan& plan,
                                    std::span<const std::uint64_t> n_grid, std::uint64_t reps,
                                    std::uint64_t seed, const McOptions& options = {});

/// Finite-horizon path proxy for almost-sure convergence: the fraction of
/// paths with sup_{m in [n, n_max]} |xtilde_m - mean| < eps, on a log-spaced
/// grid from n_start to n_max. A proxy only: almost-sure convergence is not
/// finitely checkable, and the metadata says so.
ConvergenceCurve slln_proxy(const Distribution& dist, const DeletionPlan& plan, double eps,
                            std::uint64_t n_start, std::uint64_t n_max, std::uint64_t paths,
                            std::uint64_t seed, const McOptions& options = {});

/// Mean over paths of |S_retained| / (n^(1/2) (log n)^(1/2+eps_exponent));
/// requires a zero-mean law with finite variance.
ConvergenceCurve log_scaling_experiment(const Distribution& dist, const DeletionPlan& plan,
                                        double eps_exponent,
                                        std::span<const std::uint64_t> n_grid,
                                        std::uint64_t paths, std::uint64_t seed,
                                        const McOptions& options = {});

/// Distributional diagnostics of the standardized deleting-items sum:
/// (S_retained - n*mu) / (sqrt(n)*sigma) for an i.i.d. law, and
/// (S_retained - sum mu_i) / B_n for an array.
struct CltResult {
  double ks = 0;         // Kolmogorov-Smirnov distance to the standard normal
  double stat_mean = 0;  // sample mean of the standardized statistic
  double stat_var = 0;   // sample variance (denominator reps - 1)
  std::uint64_t n = 0, k = 0, reps = 0;

  nlohmann::json to_json() const;
};

CltResult clt_experiment(const Distribution& dist, const DeletionPlan& plan, std::uint64_t n,
                         std::uint64_t reps, std::uint64_t seed, const McOptions& options = {});
CltResult clt_experiment(const TriangularArray& array, const DeletionPlan& plan, std::uint64_t n,
                         std::uint64_t reps, std::uint64_t seed, const McOptions& options = {});

/// Kolmogorov-Smirnov distance between the empirical CDF of the samples and
/// the reference CDF: sup_i max(|i/N - F(x_(i))|, |(i-1)/N - F(x_(i))|).
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

}  // namespace dslab
