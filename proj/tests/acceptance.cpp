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

// Acceptance suite. Each criterion prints exactly one [PASS]/[FAIL] line with
// the measured numbers; the binary exits nonzero if any executed criterion
// fails. Usage: dslab_acceptance [--criterion N] [--workers W]

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "conditions.hpp"
#include "deletion.hpp"
#include "distribution.hpp"
#include "dslab/dslab.h"
#include "estimators.hpp"
#include "exact_oracle.hpp"
#include "mc.hpp"
#include "triangular.hpp"

namespace {

using dslab::DeletionPlan;
using dslab::DeletionPolicy;
using dslab::DeletionSchedule;
using dslab::Distribution;

constexpr std::uint64_t kSeed = 20260809;
int g_workers = 1;

DeletionPlan prefix(DeletionSchedule schedule) {
  DeletionPlan plan;
  plan.schedule = schedule;
  plan.policy = DeletionPolicy::Prefix;
  return plan;
}

dslab::McOptions options() {
  dslab::McOptions o;
  o.workers = g_workers;
  return o;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  template <typename T>
  Outcome& operator<<(const T& value) {
    detail << value;
    return *this;
  }

  void require(bool ok, const std::string& label) {
    if (!ok) {
      pass = false;
      detail << " !" << label;
    }
  }
};

// 1. Enumerated expectations match the closed forms to 1e-12 relative.
void criterion1(Outcome& out) {
  const auto laws = {dslab::DiscreteLaw::make({{0.0, 0.7}, {1.0, 0.3}}),
                     dslab::DiscreteLaw::make({{0.0, 0.5}, {1.0, 0.5}}),
                     dslab::DiscreteLaw::make({{-1.0, 0.25}, {0.0, 0.5}, {2.0, 0.25}})};
  double worst = 0.0;
  for (const auto& law : laws) {
    const double mu = law.mean();
    const double sigma2 = law.variance();
    for (std::uint64_t n = 2; n <= 8; ++n) {
      for (std::uint64_t k = 0; k < n; ++k) {
        const auto m = dslab::enumerate_expectations(law, n, prefix(DeletionSchedule::fixed(k)));
        const auto f = dslab::expected_values(n, k, mu, sigma2);
        const double pairs[5][2] = {{m.e_xtilde, f.e_xtilde},
                                    {m.e_s1t, f.e_s1t},
                                    {m.e_s2t, f.e_s2t},
                                    {m.e_s3t, f.e_s3t},
                                    {m.e_s2, f.e_s2}};
        for (const auto& pair : pairs) {
          const double rel =
              std::fabs(pair[0] - pair[1]) / std::max(1.0, std::fabs(pair[1]));
          worst = std::max(worst, rel);
        }
      }
    }
  }
  out << "max relative error " << worst;
  out.require(worst <= 1e-12, "rel<=1e-12");
}

// 2. Ordering and threshold classification over the full grid, no mismatches.
void criterion2(Outcome& out) {
  std::uint64_t combos = 0, mismatches = 0;
  for (std::uint64_t n = 2; n <= 50; ++n) {
    for (std::uint64_t k = 1; k < n; ++k) {
      for (double mu : {-2.0, 0.0, 1.5}) {
        for (double sigma2 : {0.01, 1.0, 4.0}) {
          const auto r = dslab::expected_values(n, k, mu, sigma2);
          bool ok = r.e_s1t > r.e_s2 && r.e_s2t < r.e_s2;
          const double diff = r.e_s3t - r.e_s2;
          const double zero_band = 1e-12 * (1.0 + std::fabs(r.e_s2) + std::fabs(r.e_s3t));
          switch (r.s3_class) {
            case dslab::S3Class::MuZeroBelow:
              ok = ok && mu == 0.0 && diff < 0.0;
              break;
            case dslab::S3Class::BelowOrEqual:
              ok = ok && diff <= zero_band;
              break;
            case dslab::S3Class::Above:
              ok = ok && diff > 0.0;
              break;
          }
          ++combos;
          if (!ok) ++mismatches;
        }
      }
    }
  }
  out << combos << " combinations, " << mismatches << " mismatches";
  out.require(mismatches == 0, "zero-mismatches");
}

// 3. Deleting Bernoulli WLLN: tail probabilities fall along the grid.
void criterion3(Outcome& out) {
  const std::vector<std::uint64_t> grid{100, 1000, 10000, 100000};
  const auto curve =
      dslab::wlln_experiment(Distribution::bernoulli(0.5), prefix(DeletionSchedule::power(0.5)),
                             0.05, grid, 10000, kSeed, options());
  out << "estimates";
  for (double e : curve.estimate) out << " " << e;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double slack = 2.0 * std::sqrt(curve.std_error[i] * curve.std_error[i] +
                                         curve.std_error[i + 1] * curve.std_error[i + 1]);
    out.require(curve.estimate[i + 1] <= curve.estimate[i] + slack, "non-increasing");
  }
  out.require(curve.estimate.back() < 0.01, "final<0.01");
}

// 4. WLLN negative control: constant-fraction deletion defeats the law.
void criterion4(Outcome& out) {
  const auto curve =
      dslab::wlln_experiment(Distribution::bernoulli(0.5), prefix(DeletionSchedule::linear(0.5)),
                             0.1, std::vector<std::uint64_t>{10000}, 10000, kSeed, options());
  out << "tail probability " << curve.estimate[0];
  out.require(curve.estimate[0] > 0.99, "tail>0.99");
}

// 5. Deleting CLT plus the symmetric-walk control.
void criterion5(Outcome& out) {
  const auto deleting =
      dslab::clt_experiment(Distribution::normal(2.0, 1.0), prefix(DeletionSchedule::power(0.25)),
                            10000, 2000, kSeed, options());
  out << "deleting: ks " << deleting.ks << ", stat_mean " << deleting.stat_mean;
  out.require(deleting.ks <= 0.05, "ks<=0.05");
  out.require(std::fabs(deleting.stat_mean) <= 0.15, "|mean|<=0.15");

  const auto control = dslab::clt_experiment(
      Distribution::rademacher(), prefix(DeletionSchedule::zero()), 10000, 2000, kSeed, options());
  out << "; control: ks " << control.ks;
  out.require(control.ks <= 0.05, "control-ks<=0.05");
}

// 6. CLT condition sharpness: the violated rate condition shows its drift.
void criterion6(Outcome& out) {
  const auto result =
      dslab::clt_experiment(Distribution::bernoulli(0.5), prefix(DeletionSchedule::power(0.75)),
                            10000, 2000, kSeed, options());
  out << "stat_mean " << result.stat_mean << " (analytic drift -10)";
  out.require(result.stat_mean <= -8.0, "mean<=-8");
}

// 7. sqrt(n) log n scaling for the zero and fixed-5 plans.
void criterion7(Outcome& out) {
  const std::vector<std::uint64_t> grid{1000, 10000, 100000};
  const double predicted = std::sqrt(2.0 / 3.14159265358979323846) / std::log(1e4);
  bool first = true;
  for (const auto& schedule : {DeletionSchedule::zero(), DeletionSchedule::fixed(5)}) {
    const auto curve = dslab::log_scaling_experiment(Distribution::rademacher(), prefix(schedule),
                                                     0.5, grid, 200, kSeed, options());
    const char* name = first ? "zero" : "fixed5";
    out << (first ? "" : "; ") << name << ":";
    for (double e : curve.estimate) out << " " << e;
    out.require(curve.estimate[0] > curve.estimate[1] && curve.estimate[1] > curve.estimate[2],
                std::string(name) + "-decreasing");
    out.require(std::fabs(curve.estimate[1] - predicted) <= 0.15 * predicted,
                std::string(name) + "-within-15%");
    first = false;
  }
  out << " (predicted " << predicted << ")";
}

// 8. Condition checkers hit their closed-form values.
void criterion8(Outcome& out) {
  const auto rademacher = dslab::TriangularArray::iid(Distribution::rademacher());
  // eps*sqrt(n) > 1 kills the truncated mass entirely
  bool zeros = true;
  zeros = zeros && dslab::lindeberg_sum(rademacher, 5, 0.5) == 0.0;
  zeros = zeros && dslab::lindeberg_sum(rademacher, 100, 0.11) == 0.0;
  zeros = zeros && dslab::lindeberg_sum(rademacher, 10000, 0.0101) == 0.0;
  out.require(zeros, "rademacher-zero");

  const auto normal = dslab::TriangularArray::iid(Distribution::normal(0.0, 1.0));
  const double lindeberg = dslab::lindeberg_sum(normal, 400, 0.1);
  out << "normal lindeberg(400, 0.1) = " << lindeberg;
  out.require(std::fabs(lindeberg - 0.26146) <= 1e-4, "normal-0.26146");

  const double lyap100 = dslab::lyapunov_sum(rademacher, 100, 1.0);
  const double lyap10k = dslab::lyapunov_sum(rademacher, 10000, 1.0);
  out << "; lyapunov " << lyap100 << " / " << lyap10k;
  out.require(lyap100 == 1.0 / std::sqrt(100.0), "lyapunov-100-exact");
  out.require(lyap10k == 1.0 / std::sqrt(10000.0), "lyapunov-1e4-exact");
}

// 9. Byte-identical artifacts for workers 1 and 8, through the C API.
void criterion9(Outcome& out) {
  const char* configs[2] = {
      "{\"experiment\":\"wlln\",\"dist\":{\"family\":\"bernoulli\",\"p\":0.5},"
      "\"eps\":0.05,\"plan\":{\"schedule\":{\"kind\":\"power\",\"r\":0.5},"
      "\"policy\":\"uniform_random\"},\"n_grid\":[100,1000],\"reps\":500,"
      "\"master_seed\":20260809}",
      "{\"experiment\":\"clt\",\"dist\":{\"family\":\"normal\",\"mu\":2,\"sigma2\":1},"
      "\"plan\":{\"schedule\":{\"kind\":\"power\",\"r\":0.25},\"policy\":\"prefix\"},"
      "\"n\":2000,\"reps\":1000,\"master_seed\":20260809}"};
  for (const char* config : configs) {
    dslab_run_result* one = nullptr;
    dslab_run_result* eight = nullptr;
    const bool ok_one = dslab_run(config, 1, &one) == DSLAB_OK;
    const bool ok_eight = dslab_run(config, 8, &eight) == DSLAB_OK;
    out.require(ok_one && ok_eight, "run-ok");
    if (ok_one && ok_eight) {
      out.require(std::strcmp(dslab_run_result_csv(one), dslab_run_result_csv(eight)) == 0,
                  "csv-identical");
      out.require(std::strcmp(dslab_run_result_json(one), dslab_run_result_json(eight)) == 0,
                  "json-identical");
      out.require(std::strcmp(dslab_run_result_basename(one),
                              dslab_run_result_basename(eight)) == 0,
                  "basename-identical");
    }
    dslab_run_result_destroy(one);
    dslab_run_result_destroy(eight);
  }
  out << "wlln and clt artifacts identical for workers 1 and 8";
}

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;  // 0 = none stated
  std::function<void(Outcome&)> run;
};

const std::vector<Criterion> kCriteria = {
    {1, "oracle-formula agreement (3 laws, n=2..8, k=0..n-1, 1e-12 relative)", 30.0, criterion1},
    {2, "ordering and s3 threshold classification over the full grid", 5.0, criterion2},
    {3, "deleting Bernoulli WLLN tail curve (power 0.5 prefix)", 60.0, criterion3},
    {4, "WLLN negative control (linear 0.5 deletion)", 0.0, criterion4},
    {5, "deleting CLT (normal mean 2) and symmetric-walk control", 0.0, criterion5},
    {6, "CLT condition sharpness (power 0.75, drift -10)", 0.0, criterion6},
    {7, "sqrt(n) log n scaling for zero and fixed-5 plans", 0.0, criterion7},
    {8, "Lindeberg/Lyapunov checkers at closed-form points", 0.0, criterion8},
    {9, "byte-identical artifacts across worker counts", 0.0, criterion9},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc) g_workers = std::atoi(argv[++i]);
  }

  bool all_pass = true;
  for (const auto& criterion : kCriteria) {
    if (only != 0 && criterion.id != only) continue;
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(outcome);
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome << " exception: " << e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.time_limit_s > 0.0 && elapsed > criterion.time_limit_s) {
      outcome.pass = false;
      outcome << " !time-limit-" << criterion.time_limit_s << "s";
    }
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << "criterion " << criterion.id << ": "
              << criterion.title << " :: " << outcome.detail.str() << " [" << elapsed << "s]"
              << std::endl;
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}
