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

#include "runner.hpp"

#include <vector>

#include "conditions.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "deletion.hpp"
#include "distribution.hpp"
#include "error.hpp"
#include "estimators.hpp"
#include "exact_oracle.hpp"
#include "mc.hpp"
#include "triangular.hpp"
#include "version.hpp"

namespace dslab {

namespace {

std::string curve_csv(const ConvergenceCurve& curve) {
  CsvBuilder csv({"n", "estimate", "std_error"});
  for (std::size_t i = 0; i < curve.n_grid.size(); ++i) {
    csv.row({std::to_string(curve.n_grid[i]), format_double(curve.estimate[i]),
             format_double(curve.std_error[i])});
  }
  return csv.str();
}

std::vector<std::uint64_t> grid_of(const nlohmann::json& config) {
  std::vector<std::uint64_t> grid;
  for (const auto& v : config["n_grid"]) grid.push_back(v.get<std::uint64_t>());
  return grid;
}

struct ExperimentOutput {
  std::string csv;
  nlohmann::json results;
};

ExperimentOutput run_wlln(const nlohmann::json& config, const McOptions& options) {
  const auto plan = DeletionPlan::from_json(config["plan"]);
  const auto grid = grid_of(config);
  const double eps = config["eps"].get<double>();
  const auto reps = config["reps"].get<std::uint64_t>();
  const auto seed = config["master_seed"].get<std::uint64_t>();
  ConvergenceCurve curve;
  if (config.contains("array")) {
    curve = wlln_experiment(TriangularArray::from_json(config["array"]), plan, eps, grid, reps,
                            seed, options);
  } else if (config["diagnostic"].get<std::string>() == "bounded_functional") {
    curve = bounded_functional(Distribution::from_json(config["dist"]), plan, grid, reps, seed,
                               options);
  } else {
    curve = wlln_experiment(Distribution::from_json(config["dist"]), plan, eps, grid, reps, seed,
                            options);
  }
  return {curve_csv(curve), curve.to_json()};
}

ExperimentOutput run_slln(const nlohmann::json& config, const McOptions& options) {
  const auto curve = slln_proxy(Distribution::from_json(config["dist"]),
                                DeletionPlan::from_json(config["plan"]),
                                config["eps"].get<double>(), config["n_start"].get<std::uint64_t>(),
                                config["n_max"].get<std::uint64_t>(),
                                config["paths"].get<std::uint64_t>(),
                                config["master_seed"].get<std::uint64_t>(), options);
  return {curve_csv(curve), curve.to_json()};
}

ExperimentOutput run_log_scaling(const nlohmann::json& config, const McOptions& options) {
  const auto curve = log_scaling_experiment(
      Distribution::from_json(config["dist"]), DeletionPlan::from_json(config["plan"]),
      config["eps_exponent"].get<double>(), grid_of(config), config["paths"].get<std::uint64_t>(),
      config["master_seed"].get<std::uint64_t>(), options);
  return {curve_csv(curve), curve.to_json()};
}

ExperimentOutput run_clt(const nlohmann::json& config, const McOptions& options) {
  const auto plan = DeletionPlan::from_json(config["plan"]);
  const auto n = config["n"].get<std::uint64_t>();
  const auto reps = config["reps"].get<std::uint64_t>();
  const auto seed = config["master_seed"].get<std::uint64_t>();
  CltResult result;
  if (config.contains("array")) {
    result = clt_experiment(TriangularArray::from_json(config["array"]), plan, n, reps, seed,
                            options);
  } else {
    result = clt_experiment(Distribution::from_json(config["dist"]), plan, n, reps, seed, options);
  }
  CsvBuilder csv({"n", "ks", "stat_mean", "stat_var"});
  csv.row({std::to_string(result.n), format_double(result.ks), format_double(result.stat_mean),
           format_double(result.stat_var)});
  return {csv.str(), result.to_json()};
}

ExperimentOutput run_bias(const nlohmann::json& config) {
  const auto n = config["n"].get<std::uint64_t>();
  const auto k = config["k"].get<std::uint64_t>();
  const double mu = config["mu"].get<double>();
  const double sigma2 = config["sigma2"].get<double>();
  const BiasReport report = expected_values(n, k, mu, sigma2);
  CsvBuilder csv({"n", "k", "mu", "sigma2", "e_xtilde", "e_s1t", "e_s2t", "e_s3t", "e_s2",
                  "s3_class", "threshold"});
  csv.row({std::to_string(n), std::to_string(k), format_double(mu), format_double(sigma2),
           format_double(report.e_xtilde), format_double(report.e_s1t),
           format_double(report.e_s2t), format_double(report.e_s3t), format_double(report.e_s2),
           s3_class_name(report.s3_class),
           report.threshold ? format_double(*report.threshold) : std::string()});
  nlohmann::json results = report.to_json();
  results["n"] = n;
  results["k"] = k;
  results["mu"] = mu;
  results["sigma2"] = sigma2;
  return {csv.str(), results};
}

ExperimentOutput run_oracle(const nlohmann::json& config) {
  const auto law = DiscreteLaw::from_json(config["law"]);
  const auto n = config["n"].get<std::uint64_t>();
  const auto plan = DeletionPlan::from_json(config["plan"]);
  const auto moments = enumerate_expectations(law, n, plan);
  const std::uint64_t k = k_of_n(plan.schedule, n);

  nlohmann::json results = moments.to_json();
  results["n"] = n;
  results["k"] = k;
  results["policy"] = policy_name(plan.policy);
  std::string tail_eps_cell;
  std::string tail_prob_cell;
  if (config.contains("eps")) {
    const double eps = config["eps"].get<double>();
    const double tail = exact_tail_prob(law, n, plan, eps);
    results["tail_eps"] = eps;
    results["tail_prob"] = tail;
    tail_eps_cell = format_double(eps);
    tail_prob_cell = format_double(tail);
  }
  CsvBuilder csv({"n", "k", "policy", "e_xbar", "e_s2", "e_xtilde", "e_s1t", "e_s2t", "e_s3t",
                  "tail_eps", "tail_prob"});
  csv.row({std::to_string(n), std::to_string(k), policy_name(plan.policy),
           format_double(moments.e_xbar), format_double(moments.e_s2),
           format_double(moments.e_xtilde), format_double(moments.e_s1t),
           format_double(moments.e_s2t), format_double(moments.e_s3t), tail_eps_cell,
           tail_prob_cell});
  return {csv.str(), results};
}

ExperimentOutput run_conditions(const nlohmann::json& config) {
  const auto array = TriangularArray::from_json(config["array"]);
  const auto grid = grid_of(config);
  const double eps = config["eps"].get<double>();
  std::optional<double> delta;
  if (config.contains("delta")) delta = config["delta"].get<double>();

  CsvBuilder csv({"n", "lindeberg", "lyapunov", "feller_max", "rate_sigma", "rate_mu", "b_n2"});
  nlohmann::json rows = nlohmann::json::array();
  for (std::uint64_t n : grid) {
    const ConditionReport report = feller_and_rates(array, n, eps, delta);
    csv.row({std::to_string(n), format_double(*report.lindeberg),
             report.lyapunov ? format_double(*report.lyapunov) : std::string(),
             format_double(report.feller_max), format_double(report.rate_sigma),
             format_double(report.rate_mu), format_double(report.b_n2)});
    nlohmann::json row{{"n", n},
                       {"lindeberg", *report.lindeberg},
                       {"feller_max", report.feller_max},
                       {"rate_sigma", report.rate_sigma},
                       {"rate_mu", report.rate_mu},
                       {"b_n2", report.b_n2}};
    row["lyapunov"] = report.lyapunov ? nlohmann::json(*report.lyapunov) : nlohmann::json();
    rows.push_back(row);
  }
  nlohmann::json results{{"rows", rows},
                         {"eps", eps},
                         {"note", "rate hypotheses are finite-grid evidence, not decisions"}};
  if (delta) results["delta"] = *delta;
  return {csv.str(), results};
}

}  // namespace

RunArtifacts run_experiment(const nlohmann::json& config, int workers) {
  const nlohmann::json canonical = normalize_config(config);
  const auto diags = validate_config(canonical);
  const ExperimentKind kind = experiment_from_name(canonical["experiment"].get<std::string>());
  McOptions options;
  options.workers = workers;

  ExperimentOutput output;
  switch (kind) {
    case ExperimentKind::Wlln:
      output = run_wlln(canonical, options);
      break;
    case ExperimentKind::Slln:
      output = run_slln(canonical, options);
      break;
    case ExperimentKind::Clt:
      output = run_clt(canonical, options);
      break;
    case ExperimentKind::LogScaling:
      output = run_log_scaling(canonical, options);
      break;
    case ExperimentKind::Bias:
      output = run_bias(canonical);
      break;
    case ExperimentKind::Oracle:
      output = run_oracle(canonical);
      break;
    case ExperimentKind::Conditions:
      output = run_conditions(canonical);
      break;
  }

  const std::string hash = config_hash(canonical);
  RunArtifacts artifacts;
  artifacts.basename = std::string(experiment_name(kind)) + "-" + hash;
  artifacts.csv = output.csv;
  nlohmann::json doc;
  doc["artifact_schema"] = 1;
  doc["config"] = canonical;
  doc["config_hash"] = hash;
  doc["library_version"] = kVersion;
  if (canonical.contains("master_seed")) doc["master_seed"] = canonical["master_seed"];
  nlohmann::json warnings = nlohmann::json::array();
  for (const auto& d : diags) {
    if (d.severity == ConfigDiagnostic::Severity::Warning) warnings.push_back(d.to_json());
  }
  doc["diagnostics"] = warnings;
  doc["results"] = output.results;
  artifacts.json = doc.dump(2);
  artifacts.json += '\n';
  return artifacts;
}

}  // namespace dslab
