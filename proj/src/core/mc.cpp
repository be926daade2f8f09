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

#include "mc.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "accumulate.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "special.hpp"

namespace dslab {

namespace {

struct RepScratch {
  std::vector<double> values;
};

// Retained sum of one replication: draw n values from draw_at(i, stream) and
// delete k of them per the plan. The same stream drives the draws and, for
// the randomized policy, the subset selection that follows them.
template <typename DrawAt>
double retained_sum_one_rep(DrawAt&& draw_at, std::uint64_t n, DeletionPolicy policy,
                            std::uint64_t k, Stream& stream, RepScratch& scratch) {
  if (policy == DeletionPolicy::Prefix || k == 0) {
    double retained = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
      const double x = draw_at(i, stream);
      if (i >= k) retained += x;
    }
    return retained;
  }
  scratch.values.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) scratch.values[i] = draw_at(i, stream);
  const auto sel = select_indices(policy, k, scratch.values, stream);
  double retained = 0.0;
  std::size_t si = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (si < sel.size() && sel[si] == i) {
      ++si;
      continue;
    }
    retained += scratch.values[i];
  }
  return retained;
}

struct MeanSe {
  double mean;
  double se;
};

// Sequential reduction over per-replication slots; fixed order keeps results
// independent of the worker count.
MeanSe reduce_mean_se(const std::vector<double>& slots) {
  NeumaierSum sum;
  for (double v : slots) sum.add(v);
  const double mean = sum.value() / static_cast<double>(slots.size());
  if (slots.size() < 2) return {mean, 0.0};
  NeumaierSum sq;
  for (double v : slots) sq.add((v - mean) * (v - mean));
  const double var = sq.value() / static_cast<double>(slots.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(slots.size()))};
}

double binomial_se(double phat, std::uint64_t reps) {
  return std::sqrt(phat * (1.0 - phat) / static_cast<double>(reps));
}

std::vector<std::uint64_t> decade_grid(std::uint64_t n_start, std::uint64_t n_max) {
  std::vector<std::uint64_t> grid;
  for (std::uint64_t n = n_start; n < n_max; n *= 10) grid.push_back(n);
  grid.push_back(n_max);
  return grid;
}

void check_grid(std::span<const std::uint64_t> n_grid) {
  if (n_grid.empty()) throw Error(errc::invalid_argument, "n_grid must be nonempty");
  for (std::uint64_t n : n_grid) {
    if (n == 0) throw Error(errc::invalid_argument, "n_grid entries must be >= 1");
  }
}

nlohmann::json grid_json(std::span<const std::uint64_t> n_grid) {
  nlohmann::json j = nlohmann::json::array();
  for (auto n : n_grid) j.push_back(n);
  return j;
}

// Shared tail-probability driver for the i.i.d. and array overloads.
template <typename MakeDrawAt>
ConvergenceCurve tail_prob_curve(MakeDrawAt&& make_draw_at,
                                 const std::function<double(std::uint64_t)>& target_of_n,
                                 const DeletionPlan& plan, double eps,
                                 std::span<const std::uint64_t> n_grid, std::uint64_t reps,
                                 std::uint64_t seed, const McOptions& options) {
  ConvergenceCurve curve;
  curve.diagnostic = McDiagnostic::TailProb;
  std::vector<std::uint8_t> hits(reps);
  for (std::uint64_t n : n_grid) {
    const std::uint64_t k = k_of_n(plan.schedule, n);
    const double target = target_of_n(n);
    auto draw_at = make_draw_at(n);
    parallel_for_index(
        reps, options.workers,
        [&, scratch = RepScratch{}](std::uint64_t rep) mutable {
          Stream stream(derive_seed(seed, "wlln", rep));
          const double sum = retained_sum_one_rep(draw_at, n, plan.policy, k, stream, scratch);
          const double xtilde = sum / static_cast<double>(n);
          hits[rep] = std::fabs(xtilde - target) >= eps ? 1 : 0;
        });
    std::uint64_t count = 0;
    for (std::uint8_t h : hits) count += h;
    const double phat = static_cast<double>(count) / static_cast<double>(reps);
    curve.n_grid.push_back(n);
    curve.estimate.push_back(phat);
    curve.std_error.push_back(binomial_se(phat, reps));
  }
  return curve;
}

}  // namespace

const char* diagnostic_name(McDiagnostic d) {
  switch (d) {
    case McDiagnostic::TailProb:
      return "tail_prob";
    case McDiagnostic::BoundedFunctional:
      return "bounded_functional";
    case McDiagnostic::PathProxy:
      return "path_proxy";
    case McDiagnostic::KSDistance:
      return "ks_distance";
    case McDiagnostic::LogScaled:
      return "log_scaled";
    case McDiagnostic::StatMean:
      return "stat_mean";
  }
  return "?";
}

nlohmann::json ConvergenceCurve::to_json() const {
  return {{"n_grid", n_grid},
          {"estimate", estimate},
          {"std_error", std_error},
          {"diagnostic", diagnostic_name(diagnostic)},
          {"metadata", metadata}};
}

nlohmann::json CltResult::to_json() const {
  return {{"ks", ks},   {"stat_mean", stat_mean}, {"stat_var", stat_var},
          {"n", n},     {"k", k},                 {"reps", reps}};
}

ConvergenceCurve wlln_experiment(const Distribution& dist, const DeletionPlan& plan, double eps,
                                 std::span<const std::uint64_t> n_grid, std::uint64_t reps,
                                 std::uint64_t seed, const McOptions& options) {
  check_grid(n_grid);
  if (!(eps > 0.0)) throw Error(errc::invalid_argument, "wlln requires eps > 0");
  if (reps < 100) throw Error(errc::invalid_argument, "wlln requires reps >= 100");
  if (!dist.has_finite_mean()) {
    throw Error(errc::precondition, "wlln requires a finite mean; " + dist.label() +
                                        " has none (negative control belongs in clt)");
  }
  const double mu = dist.mean();
  auto curve = tail_prob_curve([&dist](std::uint64_t) {
                                 return [&dist](std::uint64_t, Stream& s) { return dist.draw(s); };
                               },
                               [mu](std::uint64_t) { return mu; }, plan, eps, n_grid, reps, seed,
                               options);
  curve.metadata = {{"experiment", "wlln"}, {"dist", dist.to_json()},     {"plan", plan.to_json()},
                    {"eps", eps},           {"n_grid", grid_json(n_grid)}, {"reps", reps},
                    {"master_seed", seed},  {"target", mu}};
  return curve;
}

ConvergenceCurve wlln_experiment(const TriangularArray& array, const DeletionPlan& plan,
                                 double eps, std::span<const std::uint64_t> n_grid,
                                 std::uint64_t reps, std::uint64_t seed,
                                 const McOptions& options) {
  check_grid(n_grid);
  if (!(eps > 0.0)) throw Error(errc::invalid_argument, "wlln requires eps > 0");
  if (reps < 100) throw Error(errc::invalid_argument, "wlln requires reps >= 100");
  // Rows are materialized once per grid point and shared read-only by all
  // replications.
  std::vector<Distribution> rows;
  auto curve = tail_prob_curve(
      [&array, &rows](std::uint64_t n) {
        rows = array.rows(n);
        return [&rows](std::uint64_t i, Stream& s) { return rows[i].draw(s); };
      },
      [&array](std::uint64_t n) {
        return mean_sum(array.rows(n)) / static_cast<double>(n);
      },
      plan, eps, n_grid, reps, seed, options);
  nlohmann::json array_spec;
  try {
    array_spec = array.to_json();
  } catch (const Error&) {
    array_spec = array.description();
  }
  curve.metadata = {{"experiment", "wlln"},  {"array", array_spec},        {"plan", plan.to_json()},
                    {"eps", eps},            {"n_grid", grid_json(n_grid)}, {"reps", reps},
                    {"master_seed", seed}};
  return curve;
}

ConvergenceCurve bounded_functional(const Distribution& dist, const DeletionPlan& plan,
                                    std::span<const std::uint64_t> n_grid, std::uint64_t reps,
                                    std::uint64_t seed, const McOptions& options) {
  check_grid(n_grid);
  if (reps == 0) throw Error(errc::invalid_argument, "bounded_functional requires reps >= 1");
  if (!dist.has_finite_mean()) {
    throw Error(errc::precondition, "bounded_functional requires a finite mean; " + dist.label() +
                                        " has none");
  }
  const double mu = dist.mean();
  ConvergenceCurve curve;
  curve.diagnostic = McDiagnostic::BoundedFunctional;
  std::vector<double> slots(reps);
  for (std::uint64_t n : n_grid) {
    const std::uint64_t k = k_of_n(plan.schedule, n);
    parallel_for_index(
        reps, options.workers,
        [&, scratch = RepScratch{}](std::uint64_t rep) mutable {
          Stream stream(derive_seed(seed, "bounded_functional", rep));
          auto draw_at = [&dist](std::uint64_t, Stream& s) { return dist.draw(s); };
          const double sum = retained_sum_one_rep(draw_at, n, plan.policy, k, stream, scratch);
          const double d = sum / static_cast<double>(n) - mu;
          slots[rep] = d * d / (1.0 + d * d);
        });
    const MeanSe ms = reduce_mean_se(slots);
    curve.n_grid.push_back(n);
    curve.estimate.push_back(ms.mean);
    curve.std_error.push_back(ms.se);
  }
  curve.metadata = {{"experiment", "bounded_functional"},
                    {"dist", dist.to_json()},
                    {"plan", plan.to_json()},
                    {"n_grid", grid_json(n_grid)},
                    {"reps", reps},
                    {"master_seed", seed},
                    {"target", mu}};
  return curve;
}

ConvergenceCurve slln_proxy(const Distribution& dist, const DeletionPlan& plan, double eps,
                            std::uint64_t n_start, std::uint64_t n_max, std::uint64_t paths,
                            std::uint64_t seed, const McOptions& options) {
  if (n_start == 0 || n_start >= n_max) {
    throw Error(errc::invalid_argument, "slln requires 1 <= n_start < n_max");
  }
  if (!(eps > 0.0)) throw Error(errc::invalid_argument, "slln requires eps > 0");
  if (paths == 0) throw Error(errc::invalid_argument, "slln requires paths >= 1");
  if (!dist.has_finite_mean()) {
    throw Error(errc::precondition, "slln requires a finite mean; " + dist.label() + " has none");
  }
  const double mu = dist.mean();
  const auto grid = decade_grid(n_start, n_max);

  // Per path, record the last position m with |xtilde_m - mu| >= eps; the
  // window [n, n_max] is violation-free iff that position is < n.
  std::vector<std::uint64_t> last_violation(paths);
  const DeletionPolicy policy = plan.policy;
  const std::uint64_t prefix_cap = k_of_n(plan.schedule, n_max);

  parallel_for_index(
      paths, options.workers,
      [&, scratch = RepScratch{}](std::uint64_t path) mutable {
        Stream stream(derive_seed(seed, "slln", path));
        double running_sum = 0.0;
        std::uint64_t last = 0;

        // Prefix policy needs only the prefix sums of the first few values.
        std::vector<double> prefix_sums;
        // Extremal policy keeps (|value|, index) ordered largest-first.
        auto larger_abs = [](const std::pair<double, std::uint64_t>& a,
                             const std::pair<double, std::uint64_t>& b) {
          if (a.first != b.first) return a.first > b.first;
          return a.second < b.second;
        };
        std::set<std::pair<double, std::uint64_t>, decltype(larger_abs)> by_abs(larger_abs);

        if (policy == DeletionPolicy::Prefix) {
          prefix_sums.assign(prefix_cap + 1, 0.0);
        } else {
          scratch.values.clear();
          scratch.values.reserve(n_max);
        }

        for (std::uint64_t m = 1; m <= n_max; ++m) {
          const double x = dist.draw(stream);
          running_sum += x;
          const std::uint64_t k = k_of_n(plan.schedule, m);
          double deleted = 0.0;
          switch (policy) {
            case DeletionPolicy::Prefix:
              if (m <= prefix_cap) prefix_sums[m] = prefix_sums[m - 1] + x;
              deleted = prefix_sums[k];
              break;
            case DeletionPolicy::UniformRandom: {
              scratch.values.push_back(x);
              if (k > 0) {
                const auto sel = select_indices(DeletionPolicy::UniformRandom, k,
                                                std::span<const double>(scratch.values), stream);
                for (std::uint64_t idx : sel) deleted += scratch.values[idx];
              }
              break;
            }
            case DeletionPolicy::ExtremalAbs: {
              scratch.values.push_back(x);
              by_abs.emplace(std::fabs(x), m - 1);
              auto it = by_abs.begin();
              for (std::uint64_t j = 0; j < k; ++j, ++it) deleted += scratch.values[it->second];
              break;
            }
          }
          const double xtilde = (running_sum - deleted) / static_cast<double>(m);
          if (std::fabs(xtilde - mu) >= eps) last = m;
        }
        last_violation[path] = last;
      });

  ConvergenceCurve curve;
  curve.diagnostic = McDiagnostic::PathProxy;
  for (std::uint64_t n : grid) {
    std::uint64_t ok = 0;
    for (std::uint64_t last : last_violation) ok += last < n ? 1 : 0;
    const double phat = static_cast<double>(ok) / static_cast<double>(paths);
    curve.n_grid.push_back(n);
    curve.estimate.push_back(phat);
    curve.std_error.push_back(binomial_se(phat, paths));
  }
  curve.metadata = {{"experiment", "slln"},
                    {"dist", dist.to_json()},
                    {"plan", plan.to_json()},
                    {"eps", eps},
                    {"n_start", n_start},
                    {"n_max", n_max},
                    {"paths", paths},
                    {"master_seed", seed},
                    {"target", mu},
                    {"note", "finite-horizon path proxy for almost-sure convergence"}};
  return curve;
}

ConvergenceCurve log_scaling_experiment(const Distribution& dist, const DeletionPlan& plan,
                                        double eps_exponent,
                                        std::span<const std::uint64_t> n_grid,
                                        std::uint64_t paths, std::uint64_t seed,
                                        const McOptions& options) {
  check_grid(n_grid);
  if (!(eps_exponent > 0.0)) {
    throw Error(errc::invalid_argument, "log_scaling requires eps_exponent > 0");
  }
  if (paths == 0) throw Error(errc::invalid_argument, "log_scaling requires paths >= 1");
  if (!dist.has_finite_variance()) {
    throw Error(errc::precondition,
                "log_scaling requires finite variance; " + dist.label() + " has none");
  }
  if (dist.mean() != 0.0) {
    throw Error(errc::precondition,
                "log_scaling requires a zero-mean law; " + dist.label() + " has mean != 0");
  }
  std::vector<std::uint64_t> grid(n_grid.begin(), n_grid.end());
  std::sort(grid.begin(), grid.end());
  for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
    if (grid[g] == grid[g + 1]) throw Error(errc::invalid_argument, "n_grid must be distinct");
  }
  const std::uint64_t n_max = grid.back();
  const std::uint64_t prefix_cap = k_of_n(plan.schedule, n_max);
  if (grid.front() < 2) {
    throw Error(errc::invalid_argument, "log_scaling requires n >= 2 (log n must be positive)");
  }

  // slot layout: path-major, grid-minor
  std::vector<double> slots(paths * grid.size());
  parallel_for_index(
      paths, options.workers,
      [&, scratch = RepScratch{}](std::uint64_t path) mutable {
        Stream stream(derive_seed(seed, "log_scaling", path));
        double running_sum = 0.0;
        std::vector<double> prefix_sums;
        const bool prefix_only = plan.policy == DeletionPolicy::Prefix;
        if (prefix_only) {
          prefix_sums.assign(prefix_cap + 1, 0.0);
        } else {
          scratch.values.clear();
          scratch.values.reserve(n_max);
        }
        std::size_t g = 0;
        for (std::uint64_t m = 1; m <= n_max; ++m) {
          const double x = dist.draw(stream);
          running_sum += x;
          if (prefix_only) {
            if (m <= prefix_cap) prefix_sums[m] = prefix_sums[m - 1] + x;
          } else {
            scratch.values.push_back(x);
          }
          if (g < grid.size() && m == grid[g]) {
            const std::uint64_t k = k_of_n(plan.schedule, m);
            double deleted = 0.0;
            if (prefix_only) {
              deleted = prefix_sums[k];
            } else if (k > 0) {
              const auto sel = select_indices(plan.policy, k,
                                              std::span<const double>(scratch.values), stream);
              for (std::uint64_t idx : sel) deleted += scratch.values[idx];
            }
            const double dm = static_cast<double>(m);
            const double denom = std::sqrt(dm) * std::pow(std::log(dm), 0.5 + eps_exponent);
            slots[path * grid.size() + g] = std::fabs(running_sum - deleted) / denom;
            ++g;
          }
        }
      });

  ConvergenceCurve curve;
  curve.diagnostic = McDiagnostic::LogScaled;
  std::vector<double> per_path(paths);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (std::uint64_t p = 0; p < paths; ++p) per_path[p] = slots[p * grid.size() + g];
    const MeanSe ms = reduce_mean_se(per_path);
    curve.n_grid.push_back(grid[g]);
    curve.estimate.push_back(ms.mean);
    curve.std_error.push_back(ms.se);
  }
  curve.metadata = {{"experiment", "log_scaling"},
                    {"dist", dist.to_json()},
                    {"plan", plan.to_json()},
                    {"eps_exponent", eps_exponent},
                    {"n_grid", grid_json(grid)},
                    {"paths", paths},
                    {"master_seed", seed}};
  return curve;
}

namespace {

template <typename DrawAt>
CltResult clt_impl(DrawAt&& draw_at, const DeletionPlan& plan, std::uint64_t n,
                   std::uint64_t reps, std::uint64_t seed, double center, double scale,
                   const McOptions& options) {
  std::vector<double> stats(reps);
  const std::uint64_t k = k_of_n(plan.schedule, n);
  parallel_for_index(
      reps, options.workers,
      [&, scratch = RepScratch{}](std::uint64_t rep) mutable {
        Stream stream(derive_seed(seed, "clt", rep));
        const double sum = retained_sum_one_rep(draw_at, n, plan.policy, k, stream, scratch);
        stats[rep] = (sum - center) / scale;
      });

  CltResult result;
  result.n = n;
  result.k = k;
  result.reps = reps;
  NeumaierSum sum;
  for (double s : stats) sum.add(s);
  result.stat_mean = sum.value() / static_cast<double>(reps);
  NeumaierSum sq;
  for (double s : stats) sq.add((s - result.stat_mean) * (s - result.stat_mean));
  result.stat_var = sq.value() / static_cast<double>(reps - 1);
  result.ks = ks_statistic(stats, [](double x) { return normal_cdf(x); });
  return result;
}

void check_clt_args(std::uint64_t n, std::uint64_t reps) {
  if (n == 0) throw Error(errc::invalid_argument, "clt requires n >= 1");
  if (reps < 1000) throw Error(errc::invalid_argument, "clt requires reps >= 1000");
}

}  // namespace

CltResult clt_experiment(const Distribution& dist, const DeletionPlan& plan, std::uint64_t n,
                         std::uint64_t reps, std::uint64_t seed, const McOptions& options) {
  check_clt_args(n, reps);
  if (!dist.has_finite_variance()) {
    throw Error(errc::precondition,
                "clt requires finite variance; " + dist.label() +
                    " is infinite-variance and serves only as the negative control "
                    "for this precondition");
  }
  const double mu = dist.mean();
  const double sigma = std::sqrt(dist.variance());
  const double dn = static_cast<double>(n);
  return clt_impl([&dist](std::uint64_t, Stream& s) { return dist.draw(s); }, plan, n, reps, seed,
                  dn * mu, std::sqrt(dn) * sigma, options);
}

CltResult clt_experiment(const TriangularArray& array, const DeletionPlan& plan, std::uint64_t n,
                         std::uint64_t reps, std::uint64_t seed, const McOptions& options) {
  check_clt_args(n, reps);
  const auto rows = array.rows(n);
  const double b_n = std::sqrt(b_n_squared(rows));
  const double center = mean_sum(rows);
  return clt_impl([&rows](std::uint64_t i, Stream& s) { return rows[i].draw(s); }, plan, n, reps,
                  seed, center, b_n, options);
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw Error(errc::invalid_argument, "ks_statistic requires samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double dn = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double hi = static_cast<double>(i + 1) / dn - f;
    const double lo = f - static_cast<double>(i) / dn;
    d = std::max(d, std::max(std::fabs(hi), std::fabs(lo)));
  }
  return d;
}

}  // namespace dslab
