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

// dslab command line driver. Builds an experiment config from a JSON file
// plus flag overrides (flags win), validates and runs it through the C API,
// and writes <out>/<experiment>-<hash>.csv and .json.
//
// Exit codes: 0 success, 2 validation error, 3 numeric precondition failure.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dslab/dslab.h"

namespace {

using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitPrecondition = 3;

int exit_code_of(dslab_status status) {
  switch (status) {
    case DSLAB_OK:
      return 0;
    case DSLAB_ERR_PRECONDITION:
    case DSLAB_ERR_OVERFLOW:
      return kExitPrecondition;
    case DSLAB_ERR_VALIDATION:
    case DSLAB_ERR_INVALID_ARGUMENT:
      return kExitValidation;
    default:
      return 1;
  }
}

json load_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError(std::string(what), "cannot open file: " + path);
  json parsed;
  try {
    in >> parsed;
  } catch (const json::exception& e) {
    throw CLI::ValidationError(std::string(what), path + " is not valid JSON: " + e.what());
  }
  return parsed;
}

// Accepts inline JSON or a path to a JSON file.
json json_or_file(const std::string& text, const char* what) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      throw CLI::ValidationError(std::string(what), std::string("invalid JSON: ") + e.what());
    }
  }
  return load_json_file(text, what);
}

std::vector<std::uint64_t> parse_grid(const std::string& text) {
  std::vector<std::uint64_t> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    grid.push_back(std::stoull(item));
  }
  return grid;
}

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  int workers = 1;
  std::optional<std::string> out_dir;  // --out beats a config "out" field
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Experiment config JSON file");
  cmd->add_option("--seed", flags.seed, "Master seed (overrides config and DSLAB_SEED)");
  cmd->add_option("--workers", flags.workers, "Worker threads (does not change results)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", flags.out_dir, "Output directory for artifacts");
}

int print_diagnostics_and_exit_code(const json& diags) {
  bool has_error = false;
  bool has_precondition = false;
  for (const auto& d : diags) {
    const bool error = d.value("severity", "") == "error";
    has_error = has_error || error;
    has_precondition = has_precondition || (error && d.value("precondition", false));
    std::cerr << (error ? "error: " : "warning: ") << d.value("message", "") << "\n";
  }
  if (!has_error) return 0;
  return has_precondition ? kExitPrecondition : kExitValidation;
}

void print_summary(const std::string& experiment, const json& artifact) {
  const json& results = artifact["results"];
  if (experiment == "bias") {
    std::cout << "e_xtilde=" << results["e_xtilde"] << " e_s1t=" << results["e_s1t"]
              << " e_s2t=" << results["e_s2t"] << " e_s3t=" << results["e_s3t"]
              << " e_s2=" << results["e_s2"] << "\n"
              << "s3_class=" << results["s3_class"].get<std::string>()
              << " threshold=" << results["threshold"] << "\n";
  } else if (experiment == "oracle") {
    std::cout << "e_xbar=" << results["e_xbar"] << " e_s2=" << results["e_s2"]
              << " e_xtilde=" << results["e_xtilde"] << " e_s1t=" << results["e_s1t"]
              << " e_s2t=" << results["e_s2t"] << " e_s3t=" << results["e_s3t"] << "\n";
    if (results.contains("tail_prob")) {
      std::cout << "P(|xtilde - mean| >= " << results["tail_eps"]
                << ") = " << results["tail_prob"] << "\n";
    }
  } else if (experiment == "clt") {
    std::cout << "n=" << results["n"] << " k=" << results["k"] << " ks=" << results["ks"]
              << " stat_mean=" << results["stat_mean"] << " stat_var=" << results["stat_var"]
              << "\n";
  } else if (results.contains("n_grid")) {
    const auto& grid = results["n_grid"];
    const auto& est = results["estimate"];
    const auto& se = results["std_error"];
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::cout << "n=" << grid[i] << " estimate=" << est[i] << " std_error=" << se[i] << "\n";
    }
  }
}

int run_subcommand(const std::string& experiment, const CommonFlags& flags,
                   const json& overrides) {
  json config;
  if (!flags.config_path.empty()) config = load_json_file(flags.config_path, "--config");
  if (!config.is_object()) config = json::object();
  config["experiment"] = experiment;
  for (const auto& [key, value] : overrides.items()) config[key] = value;

  if (flags.seed) {
    config["master_seed"] = *flags.seed;
  } else if (!config.contains("master_seed")) {
    if (const char* env = std::getenv("DSLAB_SEED")) {
      try {
        config["master_seed"] = std::stoull(env);
      } catch (const std::exception&) {
        std::cerr << "error: DSLAB_SEED is not a valid 64-bit integer\n";
        return kExitValidation;
      }
    }
  }

  const std::string config_text = config.dump();

  char* diags_text = nullptr;
  dslab_status status = dslab_validate(config_text.c_str(), &diags_text);
  if (status != DSLAB_OK) {
    std::cerr << "error: " << dslab_last_error() << "\n";
    return exit_code_of(status);
  }
  const json diags = json::parse(diags_text);
  dslab_string_free(diags_text);
  if (const int code = print_diagnostics_and_exit_code(diags); code != 0) return code;

  dslab_run_result* result = nullptr;
  status = dslab_run(config_text.c_str(), flags.workers, &result);
  if (status != DSLAB_OK) {
    std::cerr << "error: " << dslab_last_error() << "\n";
    return exit_code_of(status);
  }

  const std::filesystem::path out_dir =
      flags.out_dir ? *flags.out_dir : config.value("out", std::string("."));
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  const std::string basename = dslab_run_result_basename(result);
  const auto csv_path = out_dir / (basename + ".csv");
  const auto json_path = out_dir / (basename + ".json");
  {
    std::ofstream csv(csv_path, std::ios::binary);
    std::ofstream js(json_path, std::ios::binary);
    if (!csv || !js) {
      std::cerr << "error: cannot write artifacts under " << out_dir << "\n";
      dslab_run_result_destroy(result);
      return 1;
    }
    csv << dslab_run_result_csv(result);
    js << dslab_run_result_json(result);
  }
  const json artifact = json::parse(dslab_run_result_json(result));
  dslab_run_result_destroy(result);

  print_summary(experiment, artifact);
  std::cout << "wrote " << csv_path.string() << "\n";
  std::cout << "wrote " << json_path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deleting-items partial-sum statistics lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dslab_version()));

  struct SubcommandState {
    CommonFlags common;
    std::string dist, array, plan, law, diagnostic, n_grid;
    std::optional<double> eps, eps_exponent, mu, sigma2, delta;
    std::optional<std::uint64_t> n, k, reps, paths, n_start, n_max;
  };

  auto add_law_flags = [](CLI::App* cmd, SubcommandState& s, bool with_array) {
    cmd->add_option("--dist", s.dist, "Distribution spec (inline JSON or file)");
    if (with_array) cmd->add_option("--array", s.array, "Array spec (inline JSON or file)");
    cmd->add_option("--plan", s.plan, "Deletion plan spec (inline JSON or file)");
  };

  std::map<std::string, SubcommandState> states;

  auto* wlln = app.add_subcommand("wlln", "Tail probability of the deleting-items mean");
  auto& ws = states["wlln"];
  add_common(wlln, ws.common);
  add_law_flags(wlln, ws, true);
  wlln->add_option("--eps", ws.eps, "Tolerance eps > 0");
  wlln->add_option("--n-grid", ws.n_grid, "Comma-separated n values");
  wlln->add_option("--reps", ws.reps, "Replications (>= 100)");
  wlln->add_option("--diagnostic", ws.diagnostic, "tail_prob or bounded_functional");

  auto* slln = app.add_subcommand("slln", "Finite-horizon path proxy for a.s. convergence");
  auto& ss = states["slln"];
  add_common(slln, ss.common);
  add_law_flags(slln, ss, false);
  slln->add_option("--eps", ss.eps, "Band half-width eps > 0");
  slln->add_option("--n-start", ss.n_start, "First grid point");
  slln->add_option("--n-max", ss.n_max, "Horizon");
  slln->add_option("--paths", ss.paths, "Independent trajectories");

  auto* clt = app.add_subcommand("clt", "KS distance of the standardized deleting-items sum");
  auto& cs = states["clt"];
  add_common(clt, cs.common);
  add_law_flags(clt, cs, true);
  clt->add_option("--n", cs.n, "Sample size per replication");
  clt->add_option("--reps", cs.reps, "Replications (>= 1000)");

  auto* logscale = app.add_subcommand("log-scaling", "sqrt(n) log-power scaling of the sum");
  auto& ls = states["log-scaling"];
  add_common(logscale, ls.common);
  add_law_flags(logscale, ls, false);
  logscale->add_option("--eps-exponent", ls.eps_exponent, "Exponent eps in (log n)^(1/2+eps)");
  logscale->add_option("--n-grid", ls.n_grid, "Comma-separated n values");
  logscale->add_option("--paths", ls.paths, "Independent trajectories");

  auto* bias = app.add_subcommand("bias", "Exact expectations of the six estimators");
  auto& bs = states["bias"];
  add_common(bias, bs.common);
  bias->add_option("--n", bs.n, "Frame length n >= 2");
  bias->add_option("--k", bs.k, "Deleted count 0 <= k < n");
  bias->add_option("--mu", bs.mu, "Law mean");
  bias->add_option("--sigma2", bs.sigma2, "Law variance >= 0");

  auto* oracle = app.add_subcommand("oracle", "Exact enumeration on a small discrete law");
  auto& os = states["oracle"];
  add_common(oracle, os.common);
  oracle->add_option("--law", os.law, "Discrete law (inline JSON or file)");
  oracle->add_option("--n", os.n, "Frame length 1 <= n <= 10");
  oracle->add_option("--k", os.k, "Fixed deleted count (shorthand for a fixed/prefix plan)");
  oracle->add_option("--plan", os.plan, "Deletion plan spec (inline JSON or file)");
  oracle->add_option("--eps", os.eps, "Also compute exact P(|xtilde - mean| >= eps)");

  auto* conditions = app.add_subcommand("conditions", "Lindeberg/Lyapunov/Feller diagnostics");
  auto& ds = states["conditions"];
  add_common(conditions, ds.common);
  add_law_flags(conditions, ds, true);
  conditions->add_option("--n-grid", ds.n_grid, "Comma-separated n values");
  conditions->add_option("--eps", ds.eps, "Lindeberg eps > 0");
  conditions->add_option("--delta", ds.delta, "Lyapunov delta > 0");

  CLI11_PARSE(app, argc, argv);

  try {
    for (auto& [name, state] : states) {
      CLI::App* cmd = app.get_subcommand(name);
      if (!cmd->parsed()) continue;
      json overrides = json::object();
      if (!state.dist.empty()) overrides["dist"] = json_or_file(state.dist, "--dist");
      if (!state.array.empty()) overrides["array"] = json_or_file(state.array, "--array");
      if (!state.plan.empty()) overrides["plan"] = json_or_file(state.plan, "--plan");
      if (!state.law.empty()) overrides["law"] = json_or_file(state.law, "--law");
      if (!state.n_grid.empty()) overrides["n_grid"] = parse_grid(state.n_grid);
      if (!state.diagnostic.empty()) overrides["diagnostic"] = state.diagnostic;
      if (state.eps) overrides["eps"] = *state.eps;
      if (state.eps_exponent) overrides["eps_exponent"] = *state.eps_exponent;
      if (state.mu) overrides["mu"] = *state.mu;
      if (state.sigma2) overrides["sigma2"] = *state.sigma2;
      if (state.delta) overrides["delta"] = *state.delta;
      if (state.n) overrides["n"] = *state.n;
      if (state.k) overrides["k"] = *state.k;
      if (state.reps) overrides["reps"] = *state.reps;
      if (state.paths) overrides["paths"] = *state.paths;
      if (state.n_start) overrides["n_start"] = *state.n_start;
      if (state.n_max) overrides["n_max"] = *state.n_max;
      const std::string experiment = name == "log-scaling" ? "log_scaling" : name;
      return run_subcommand(experiment, state.common, overrides);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
