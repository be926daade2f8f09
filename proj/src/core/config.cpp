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

#include "config.hpp"

#include <cmath>

#include "deletion.hpp"
#include "distribution.hpp"
#include "error.hpp"
#include "exact_oracle.hpp"
#include "triangular.hpp"

namespace dslab {

namespace {

constexpr int kSchemaVersion = 1;

using Severity = ConfigDiagnostic::Severity;

void add_error(std::vector<ConfigDiagnostic>& out, std::string message,
               bool precondition = false) {
  out.push_back({Severity::Error, precondition, std::move(message)});
}

void add_warning(std::vector<ConfigDiagnostic>& out, std::string message) {
  out.push_back({Severity::Warning, false, std::move(message)});
}

bool is_stochastic(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Wlln:
    case ExperimentKind::Slln:
    case ExperimentKind::Clt:
    case ExperimentKind::LogScaling:
      return true;
    default:
      return false;
  }
}

bool get_count(const nlohmann::json& config, const char* key, std::uint64_t& out) {
  if (!config.contains(key) || !config[key].is_number()) return false;
  const double v = config[key].get<double>();
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.007e15) return false;
  out = static_cast<std::uint64_t>(v);
  return true;
}

bool get_real(const nlohmann::json& config, const char* key, double& out) {
  if (!config.contains(key) || !config[key].is_number()) return false;
  out = config[key].get<double>();
  return std::isfinite(out);
}

bool get_grid(const nlohmann::json& config, const char* key, std::vector<std::uint64_t>& out) {
  if (!config.contains(key) || !config[key].is_array() || config[key].empty()) return false;
  out.clear();
  for (const auto& v : config[key]) {
    if (!v.is_number()) return false;
    const double d = v.get<double>();
    if (!(d >= 1.0) || d != std::floor(d)) return false;
    out.push_back(static_cast<std::uint64_t>(d));
  }
  return true;
}

struct ParsedPieces {
  bool has_dist = false;
  bool has_array = false;
  Distribution dist = Distribution::rademacher();
  DeletionPlan plan;
  bool has_plan = false;
};

// Parses the dist/array/plan blocks, turning parse failures into diagnostics.
ParsedPieces parse_pieces(const nlohmann::json& config, std::vector<ConfigDiagnostic>& diags) {
  ParsedPieces pieces;
  if (config.contains("dist")) {
    try {
      pieces.dist = Distribution::from_json(config["dist"]);
      pieces.has_dist = true;
    } catch (const Error& e) {
      add_error(diags, e.what());
    }
  }
  if (config.contains("array")) {
    try {
      TriangularArray::from_json(config["array"]);
      pieces.has_array = true;
    } catch (const Error& e) {
      add_error(diags, e.what());
    }
  }
  if (config.contains("plan")) {
    try {
      pieces.plan = DeletionPlan::from_json(config["plan"]);
      pieces.has_plan = true;
    } catch (const Error& e) {
      add_error(diags, e.what());
    }
  }
  return pieces;
}

void negative_control_warnings(ExperimentKind kind, const ParsedPieces& pieces,
                               std::vector<ConfigDiagnostic>& diags) {
  if (!pieces.has_plan) return;
  const NegligibilityClass cls = negligibility_class(pieces.plan.schedule);
  const bool lln_like = kind == ExperimentKind::Wlln || kind == ExperimentKind::Slln ||
                        kind == ExperimentKind::LogScaling;
  if (lln_like && cls == NegligibilityClass::Violating) {
    add_warning(diags,
                "schedule deletes a constant fraction, so k(n)/n does not vanish "
                "(LLN deleting-negligibility violated) — negative-control run");
  }
  if (kind == ExperimentKind::Clt) {
    if (cls == NegligibilityClass::Violating) {
      add_warning(diags,
                  "schedule violates the CLT deleting-negligibility condition "
                  "(k(n)/sqrt(n) does not vanish) — negative-control run");
    } else if (cls == NegligibilityClass::LlnOnly && pieces.has_dist &&
               pieces.dist.has_finite_mean() && pieces.dist.mean() != 0.0) {
      add_warning(diags,
                  "k(n)/sqrt(n) does not vanish and the mean is nonzero: the "
                  "standardized statistic drifts by -k*mu/(sqrt(n)*sigma) — "
                  "negative-control run");
    }
  }
}

}  // namespace

const char* experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Wlln:
      return "wlln";
    case ExperimentKind::Slln:
      return "slln";
    case ExperimentKind::Clt:
      return "clt";
    case ExperimentKind::LogScaling:
      return "log_scaling";
    case ExperimentKind::Bias:
      return "bias";
    case ExperimentKind::Oracle:
      return "oracle";
    case ExperimentKind::Conditions:
      return "conditions";
  }
  return "?";
}

ExperimentKind experiment_from_name(const std::string& name) {
  if (name == "wlln") return ExperimentKind::Wlln;
  if (name == "slln") return ExperimentKind::Slln;
  if (name == "clt") return ExperimentKind::Clt;
  if (name == "log_scaling" || name == "log-scaling") return ExperimentKind::LogScaling;
  if (name == "bias") return ExperimentKind::Bias;
  if (name == "oracle") return ExperimentKind::Oracle;
  if (name == "conditions") return ExperimentKind::Conditions;
  throw Error(errc::validation,
              "unknown experiment \"" + name +
                  "\"; valid experiments: wlln, slln, clt, log-scaling, bias, oracle, conditions");
}

nlohmann::json ConfigDiagnostic::to_json() const {
  return {{"severity", severity == Severity::Warning ? "warning" : "error"},
          {"precondition", precondition},
          {"message", message}};
}

std::vector<ConfigDiagnostic> validate_config(const nlohmann::json& config) {
  std::vector<ConfigDiagnostic> diags;
  if (!config.is_object()) {
    add_error(diags, "config must be a JSON object");
    return diags;
  }
  if (config.contains("schema_version") &&
      (!config["schema_version"].is_number_integer() ||
       config["schema_version"].get<int>() != kSchemaVersion)) {
    add_error(diags, "unsupported schema_version (this build understands version 1)");
  }
  if (!config.contains("experiment") || !config["experiment"].is_string()) {
    add_error(diags, "config requires an \"experiment\" string");
    return diags;
  }
  ExperimentKind kind;
  try {
    kind = experiment_from_name(config["experiment"].get<std::string>());
  } catch (const Error& e) {
    add_error(diags, e.what());
    return diags;
  }

  std::uint64_t seed = 0;
  const bool has_seed = get_count(config, "master_seed", seed);
  if (is_stochastic(kind) && !has_seed) {
    add_error(diags,
              "master_seed is required (provide \"master_seed\", --seed, or DSLAB_SEED)");
  }

  ParsedPieces pieces = parse_pieces(config, diags);

  auto require_law = [&](bool allow_array) {
    if (pieces.has_dist && pieces.has_array) {
      add_error(diags, "provide either \"dist\" or \"array\", not both");
    } else if (!pieces.has_dist && !pieces.has_array && !config.contains("dist") &&
               !config.contains("array")) {
      add_error(diags, allow_array ? "experiment requires a \"dist\" or \"array\" spec"
                                   : "experiment requires a \"dist\" spec");
    }
    if (!allow_array && (pieces.has_array || config.contains("array"))) {
      add_error(diags, "this experiment accepts \"dist\" only");
    }
  };

  std::vector<std::uint64_t> grid;
  std::uint64_t count = 0;
  double real = 0.0;
  switch (kind) {
    case ExperimentKind::Wlln: {
      require_law(/*allow_array=*/true);
      if (!get_real(config, "eps", real) || !(real > 0.0)) {
        add_error(diags, "wlln requires eps > 0");
      }
      if (config.contains("n_grid") && !get_grid(config, "n_grid", grid)) {
        add_error(diags, "n_grid must be a nonempty array of integers >= 1");
      }
      if (config.contains("reps") && (!get_count(config, "reps", count) || count < 100)) {
        add_error(diags, "wlln requires integer reps >= 100");
      }
      if (config.contains("diagnostic")) {
        const auto& d = config["diagnostic"];
        if (!d.is_string() ||
            (d.get<std::string>() != "tail_prob" && d.get<std::string>() != "bounded_functional")) {
          add_error(diags, "wlln diagnostic must be \"tail_prob\" or \"bounded_functional\"");
        }
        if (d.is_string() && d.get<std::string>() == "bounded_functional" && pieces.has_array) {
          add_error(diags, "bounded_functional diagnostic supports \"dist\" only");
        }
      }
      if (pieces.has_dist && !pieces.dist.has_finite_mean()) {
        add_error(diags, "wlln requires a law with a finite mean; " + pieces.dist.label() +
                             " has none",
                  /*precondition=*/true);
      }
      break;
    }
    case ExperimentKind::Slln: {
      require_law(/*allow_array=*/false);
      if (!get_real(config, "eps", real) || !(real > 0.0)) {
        add_error(diags, "slln requires eps > 0");
      }
      std::uint64_t n_start = 0, n_max = 0;
      if (!get_count(config, "n_start", n_start) || n_start < 1) {
        add_error(diags, "slln requires integer n_start >= 1");
      }
      if (!get_count(config, "n_max", n_max) || n_max <= n_start) {
        add_error(diags, "slln requires integer n_max > n_start");
      }
      if (config.contains("paths") && (!get_count(config, "paths", count) || count < 1)) {
        add_error(diags, "slln requires integer paths >= 1");
      }
      if (pieces.has_dist && !pieces.dist.has_finite_mean()) {
        add_error(diags, "slln requires a law with a finite mean; " + pieces.dist.label() +
                             " has none",
                  /*precondition=*/true);
      }
      break;
    }
    case ExperimentKind::Clt: {
      require_law(/*allow_array=*/true);
      if (!get_count(config, "n", count) || count < 1) {
        add_error(diags, "clt requires integer n >= 1");
      }
      if (config.contains("reps") && (!get_count(config, "reps", count) || count < 1000)) {
        add_error(diags, "clt requires integer reps >= 1000");
      }
      if (pieces.has_dist && !pieces.dist.has_finite_variance()) {
        add_error(diags,
                  "clt requires finite variance; " + pieces.dist.label() +
                      " is the infinite-variance negative control and is rejected by contract",
                  /*precondition=*/true);
      }
      break;
    }
    case ExperimentKind::LogScaling: {
      require_law(/*allow_array=*/false);
      if (config.contains("eps_exponent") &&
          (!get_real(config, "eps_exponent", real) || !(real > 0.0))) {
        add_error(diags, "log-scaling requires eps_exponent > 0");
      }
      if (config.contains("n_grid") && !get_grid(config, "n_grid", grid)) {
        add_error(diags, "n_grid must be a nonempty array of integers >= 1");
      }
      if (config.contains("paths") && (!get_count(config, "paths", count) || count < 1)) {
        add_error(diags, "log-scaling requires integer paths >= 1");
      }
      if (pieces.has_dist) {
        if (!pieces.dist.has_finite_variance()) {
          add_error(diags, "log-scaling requires finite variance; " + pieces.dist.label() +
                               " has none",
                    /*precondition=*/true);
        } else if (pieces.dist.mean() != 0.0) {
          add_error(diags, "log-scaling requires a zero-mean law; " + pieces.dist.label() +
                               " has mean != 0",
                    /*precondition=*/true);
        }
      }
      break;
    }
    case ExperimentKind::Bias: {
      std::uint64_t n = 0, k = 0;
      if (!get_count(config, "n", n) || n < 2) add_error(diags, "bias requires integer n >= 2");
      if (!get_count(config, "k", k)) add_error(diags, "bias requires integer k >= 0");
      if (n >= 2 && k >= n) add_error(diags, "bias requires k < n");
      if (!get_real(config, "mu", real)) add_error(diags, "bias requires numeric mu");
      if (!get_real(config, "sigma2", real) || !(real >= 0.0)) {
        add_error(diags, "bias requires sigma2 >= 0");
      }
      break;
    }
    case ExperimentKind::Oracle: {
      if (!config.contains("law")) {
        add_error(diags, "oracle requires a \"law\" spec ({\"atoms\":[[value,prob],...]})");
      } else {
        try {
          DiscreteLaw::from_json(config["law"]);
        } catch (const Error& e) {
          add_error(diags, e.what());
        }
      }
      std::uint64_t n = 0;
      if (!get_count(config, "n", n) || n < 1 || n > 10) {
        add_error(diags, "oracle requires integer 1 <= n <= 10");
      }
      if (!pieces.has_plan && !config.contains("plan") && !config.contains("k")) {
        add_error(diags, "oracle requires a \"plan\" or a fixed \"k\"");
      }
      if (pieces.has_plan && pieces.plan.policy == DeletionPolicy::ExtremalAbs) {
        add_error(diags, "the exact oracle supports prefix and uniform_random policies only");
      }
      if (config.contains("eps") && (!get_real(config, "eps", real) || !(real >= 0.0))) {
        add_error(diags, "oracle eps must be >= 0");
      }
      // Enumeration size guard; mirrors the oracle's own overflow error.
      if (config.contains("law") && config["law"].is_object() &&
          config["law"].contains("atoms") && config["law"]["atoms"].is_array() && n >= 1 &&
          n <= 10) {
        const double support = static_cast<double>(config["law"]["atoms"].size());
        if (std::pow(support, static_cast<double>(n)) > 1e7) {
          add_error(diags, "oracle state space exceeds 10^7 outcomes", /*precondition=*/true);
        }
      }
      break;
    }
    case ExperimentKind::Conditions: {
      require_law(/*allow_array=*/true);
      if (config.contains("n_grid") && !get_grid(config, "n_grid", grid)) {
        add_error(diags, "n_grid must be a nonempty array of integers >= 1");
      }
      if (config.contains("eps") && (!get_real(config, "eps", real) || !(real > 0.0))) {
        add_error(diags, "conditions eps must be > 0");
      }
      if (config.contains("delta") && (!get_real(config, "delta", real) || !(real > 0.0))) {
        add_error(diags, "conditions delta must be > 0");
      }
      if (pieces.has_dist && !pieces.dist.has_finite_variance()) {
        add_error(diags, "condition checks require finite variance; " + pieces.dist.label() +
                             " has none",
                  /*precondition=*/true);
      }
      break;
    }
  }

  negative_control_warnings(kind, pieces, diags);
  return diags;
}

nlohmann::json normalize_config(const nlohmann::json& config) {
  const auto diags = validate_config(config);
  for (const auto& d : diags) {
    if (d.severity == Severity::Error) {
      throw Error(d.precondition ? errc::precondition : errc::validation, d.message);
    }
  }
  const ExperimentKind kind = experiment_from_name(config["experiment"].get<std::string>());

  nlohmann::json out;
  out["schema_version"] = kSchemaVersion;
  out["experiment"] = experiment_name(kind);
  auto copy = [&](const char* key) {
    if (config.contains(key)) out[key] = config[key];
  };
  // Round-trip dist/plan/array/law through their parsers so the canonical
  // form is independent of spelling details in the input.
  if (config.contains("dist")) out["dist"] = Distribution::from_json(config["dist"]).to_json();
  if (config.contains("array")) {
    out["array"] = TriangularArray::from_json(config["array"]).to_json();
  }
  if (config.contains("plan")) out["plan"] = DeletionPlan::from_json(config["plan"]).to_json();
  if (config.contains("law")) out["law"] = DiscreteLaw::from_json(config["law"]).to_json();

  switch (kind) {
    case ExperimentKind::Wlln:
      out["eps"] = config["eps"];
      if (!out.contains("plan")) out["plan"] = DeletionPlan{}.to_json();
      out["n_grid"] = config.contains("n_grid")
                          ? config["n_grid"]
                          : nlohmann::json::array({100, 1000, 10000, 100000});
      out["reps"] = config.contains("reps") ? config["reps"] : nlohmann::json(10000);
      out["diagnostic"] =
          config.contains("diagnostic") ? config["diagnostic"] : nlohmann::json("tail_prob");
      out["master_seed"] = config["master_seed"];
      break;
    case ExperimentKind::Slln:
      out["eps"] = config["eps"];
      if (!out.contains("plan")) out["plan"] = DeletionPlan{}.to_json();
      out["n_start"] = config["n_start"];
      out["n_max"] = config["n_max"];
      out["paths"] = config.contains("paths") ? config["paths"] : nlohmann::json(500);
      out["master_seed"] = config["master_seed"];
      break;
    case ExperimentKind::Clt:
      if (!out.contains("plan")) out["plan"] = DeletionPlan{}.to_json();
      out["n"] = config["n"];
      out["reps"] = config.contains("reps") ? config["reps"] : nlohmann::json(2000);
      out["master_seed"] = config["master_seed"];
      break;
    case ExperimentKind::LogScaling:
      if (!out.contains("plan")) out["plan"] = DeletionPlan{}.to_json();
      out["eps_exponent"] =
          config.contains("eps_exponent") ? config["eps_exponent"] : nlohmann::json(0.5);
      out["n_grid"] = config.contains("n_grid") ? config["n_grid"]
                                                : nlohmann::json::array({1000, 10000, 100000});
      out["paths"] = config.contains("paths") ? config["paths"] : nlohmann::json(200);
      out["master_seed"] = config["master_seed"];
      break;
    case ExperimentKind::Bias:
      out["n"] = config["n"];
      out["k"] = config["k"];
      out["mu"] = config["mu"];
      out["sigma2"] = config["sigma2"];
      break;
    case ExperimentKind::Oracle: {
      out["n"] = config["n"];
      if (!out.contains("plan")) {
        std::uint64_t k = 0;
        get_count(config, "k", k);
        DeletionPlan plan;
        plan.schedule = DeletionSchedule::fixed(k);
        out["plan"] = plan.to_json();
      }
      copy("eps");
      break;
    }
    case ExperimentKind::Conditions:
      if (out.contains("dist")) {
        out["array"] = TriangularArray::iid(Distribution::from_json(out["dist"])).to_json();
        out.erase("dist");
      }
      out["n_grid"] = config.contains("n_grid")
                          ? config["n_grid"]
                          : nlohmann::json::array({100, 1000, 10000});
      out["eps"] = config.contains("eps") ? config["eps"] : nlohmann::json(0.1);
      copy("delta");
      break;
  }
  if (config.contains("master_seed") && !out.contains("master_seed")) {
    out["master_seed"] = config["master_seed"];
  }
  if (config.contains("out")) out["out"] = config["out"];
  return out;
}

std::string config_hash(const nlohmann::json& canonical) {
  const std::string dump = canonical.dump();
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : dump) h = (h ^ c) * 0x00000100000001B3ull;
  static const char* digits = "0123456789abcdef";
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i) {
    hex[static_cast<std::size_t>(i)] = digits[h & 0xF];
    h >>= 4;
  }
  return hex;
}

}  // namespace dslab
