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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "config.hpp"
#include "error.hpp"
#include "runner.hpp"

using dslab::ConfigDiagnostic;
using dslab::RunArtifacts;
using dslab::run_experiment;
using dslab::validate_config;
using nlohmann::json;

namespace {

bool has_error(const std::vector<ConfigDiagnostic>& diags, const std::string& needle,
               bool precondition = false) {
  for (const auto& d : diags) {
    if (d.severity == ConfigDiagnostic::Severity::Error &&
        d.message.find(needle) != std::string::npos && d.precondition == precondition) {
      return true;
    }
  }
  return false;
}

bool has_warning(const std::vector<ConfigDiagnostic>& diags, const std::string& needle) {
  for (const auto& d : diags) {
    if (d.severity == ConfigDiagnostic::Severity::Warning &&
        d.message.find(needle) != std::string::npos) {
      return true;
    }
  }
  return false;
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("validate: missing seed is an error for stochastic experiments only") {
  const json wlln = json::parse(
      R"({"experiment":"wlln","dist":{"family":"bernoulli","p":0.5},"eps":0.05})");
  CHECK(has_error(validate_config(wlln), "master_seed"));

  const json bias = json::parse(R"({"experiment":"bias","n":10,"k":2,"mu":0,"sigma2":1})");
  CHECK(validate_config(bias).empty());
}

TEST_CASE("validate: pareto + clt is a precondition diagnostic") {
  const json config = json::parse(
      R"({"experiment":"clt","dist":{"family":"pareto","alpha":1.5},
          "plan":{"schedule":{"kind":"zero"},"policy":"prefix"},
          "n":1000,"reps":2000,"master_seed":1})");
  CHECK(has_error(validate_config(config), "finite variance", /*precondition=*/true));
}

TEST_CASE("validate: negative-control warnings name the violated condition") {
  const json drift = json::parse(
      R"({"experiment":"clt","dist":{"family":"normal","mu":2,"sigma2":1},
          "plan":{"schedule":{"kind":"power","r":0.75},"policy":"prefix"},
          "n":10000,"reps":2000,"master_seed":1})");
  CHECK(has_warning(validate_config(drift), "drift"));

  const json linear = json::parse(
      R"({"experiment":"clt","dist":{"family":"normal","mu":0,"sigma2":1},
          "plan":{"schedule":{"kind":"linear","c":0.5},"policy":"prefix"},
          "n":10000,"reps":2000,"master_seed":1})");
  CHECK(has_warning(validate_config(linear), "negative-control"));

  const json wlln_linear = json::parse(
      R"({"experiment":"wlln","dist":{"family":"bernoulli","p":0.5},"eps":0.1,
          "plan":{"schedule":{"kind":"linear","c":0.5},"policy":"prefix"},
          "master_seed":1})");
  CHECK(has_warning(validate_config(wlln_linear), "k(n)/n"));
}

TEST_CASE("validate: unknown names list the valid alternatives") {
  const auto diags = validate_config(json::parse(R"({"experiment":"anova"})"));
  CHECK(has_error(diags, "wlln, slln, clt"));
  const auto diags2 = validate_config(json::parse(
      R"({"experiment":"wlln","dist":{"family":"student"},"eps":0.1,"master_seed":1})"));
  CHECK(has_error(diags2, "valid families"));
}

TEST_CASE("run bias: golden header and pinned values") {
  const RunArtifacts artifacts = run_experiment(
      json::parse(R"({"experiment":"bias","n":10,"k":2,"mu":0,"sigma2":1})"));
  CHECK(first_line(artifacts.csv) ==
        "n,k,mu,sigma2,e_xtilde,e_s1t,e_s2t,e_s3t,e_s2,s3_class,threshold");
  CHECK(artifacts.csv.find("10,2,0,1,0,0.92,0.72,0.704,0.9,mu_zero_below,") != std::string::npos);
  CHECK(artifacts.basename.rfind("bias-", 0) == 0);
  const json doc = json::parse(artifacts.json);
  CHECK(doc["results"]["e_s3t"] == 0.704);
  CHECK(doc["library_version"] == "0.1.0");
}

TEST_CASE("run oracle: enumeration equals the closed forms") {
  const RunArtifacts artifacts = run_experiment(json::parse(
      R"({"experiment":"oracle","law":{"atoms":[[0,0.5],[1,0.5]]},"n":4,"k":1})"));
  CHECK(first_line(artifacts.csv) ==
        "n,k,policy,e_xbar,e_s2,e_xtilde,e_s1t,e_s2t,e_s3t,tail_eps,tail_prob");
  const json doc = json::parse(artifacts.json);
  CHECK(doc["results"]["e_xtilde"].get<double>() == doctest::Approx(0.375).epsilon(1e-13));
  CHECK(doc["results"]["e_s1t"].get<double>() == doctest::Approx(0.21875).epsilon(1e-13));
}

TEST_CASE("run conditions: golden header and rademacher zeros") {
  const RunArtifacts artifacts = run_experiment(json::parse(
      R"({"experiment":"conditions","dist":{"family":"rademacher"},
          "n_grid":[10,100],"eps":0.5,"delta":1})"));
  CHECK(first_line(artifacts.csv) == "n,lindeberg,lyapunov,feller_max,rate_sigma,rate_mu,b_n2");
  // eps*B_n = 0.5*sqrt(10) > 1: truncated mass is identically zero
  CHECK(artifacts.csv.find("10,0,") != std::string::npos);
  const json doc = json::parse(artifacts.json);
  CHECK(doc["results"]["rows"][0]["lindeberg"] == 0.0);
}

TEST_CASE("run wlln/clt/slln/log_scaling: curve headers") {
  const json wlln = json::parse(
      R"({"experiment":"wlln","dist":{"family":"bernoulli","p":0.5},"eps":0.05,
          "plan":{"schedule":{"kind":"power","r":0.5},"policy":"prefix"},
          "n_grid":[100,1000],"reps":200,"master_seed":42})");
  CHECK(first_line(run_experiment(wlln).csv) == "n,estimate,std_error");

  const json clt = json::parse(
      R"({"experiment":"clt","dist":{"family":"rademacher"},
          "plan":{"schedule":{"kind":"zero"},"policy":"prefix"},
          "n":500,"reps":1000,"master_seed":42})");
  CHECK(first_line(run_experiment(clt).csv) == "n,ks,stat_mean,stat_var");

  const json slln = json::parse(
      R"({"experiment":"slln","dist":{"family":"bernoulli","p":0.5},"eps":0.05,
          "plan":{"schedule":{"kind":"fixed","k":3},"policy":"prefix"},
          "n_start":100,"n_max":1000,"paths":50,"master_seed":42})");
  CHECK(first_line(run_experiment(slln).csv) == "n,estimate,std_error");

  const json log_scaling = json::parse(
      R"({"experiment":"log-scaling","dist":{"family":"rademacher"},
          "plan":{"schedule":{"kind":"zero"},"policy":"prefix"},
          "n_grid":[100,1000],"paths":50,"master_seed":42})");
  CHECK(first_line(run_experiment(log_scaling).csv) == "n,estimate,std_error");
}

TEST_CASE("artifacts regenerate byte-identically from their embedded config") {
  const json config = json::parse(
      R"({"experiment":"wlln","dist":{"family":"bernoulli","p":0.5},"eps":0.05,
          "plan":{"schedule":{"kind":"power","r":0.5},"policy":"uniform_random"},
          "n_grid":[100,500],"reps":300,"master_seed":7})");
  const RunArtifacts first = run_experiment(config, 2);
  const json embedded = json::parse(first.json)["config"];
  const RunArtifacts second = run_experiment(embedded, 2);
  CHECK(first.basename == second.basename);
  CHECK(first.csv == second.csv);
  CHECK(first.json == second.json);
}

TEST_CASE("artifacts are byte-identical across worker counts") {
  const json config = json::parse(
      R"({"experiment":"clt","dist":{"family":"normal","mu":2,"sigma2":1},
          "plan":{"schedule":{"kind":"power","r":0.25},"policy":"prefix"},
          "n":1000,"reps":1000,"master_seed":11})");
  const RunArtifacts one = run_experiment(config, 1);
  const RunArtifacts eight = run_experiment(config, 8);
  CHECK(one.csv == eight.csv);
  CHECK(one.json == eight.json);
}

TEST_CASE("config hashing is order-insensitive and value-sensitive") {
  const json a = json::parse(R"({"experiment":"bias","n":10,"k":2,"mu":0,"sigma2":1})");
  const json b = json::parse(R"({"sigma2":1,"mu":0,"k":2,"n":10,"experiment":"bias"})");
  CHECK(run_experiment(a).basename == run_experiment(b).basename);
  const json c = json::parse(R"({"experiment":"bias","n":10,"k":3,"mu":0,"sigma2":1})");
  CHECK(run_experiment(a).basename != run_experiment(c).basename);
}

TEST_CASE("run_experiment throws typed errors on invalid configs") {
  try {
    run_experiment(json::parse(R"({"experiment":"wlln","eps":0.1})"));
    FAIL("expected validation error");
  } catch (const dslab::Error& e) {
    CHECK(e.code() == dslab::errc::validation);
  }
  try {
    run_experiment(json::parse(
        R"({"experiment":"clt","dist":{"family":"pareto","alpha":1.5},
            "plan":{"schedule":{"kind":"zero"},"policy":"prefix"},
            "n":100,"reps":1000,"master_seed":1})"));
    FAIL("expected precondition error");
  } catch (const dslab::Error& e) {
    CHECK(e.code() == dslab::errc::precondition);
  }
}

TEST_CASE("warnings are embedded in the artifact json") {
  const json config = json::parse(
      R"({"experiment":"wlln","dist":{"family":"bernoulli","p":0.5},"eps":0.1,
          "plan":{"schedule":{"kind":"linear","c":0.5},"policy":"prefix"},
          "n_grid":[100],"reps":100,"master_seed":5})");
  const json doc = json::parse(run_experiment(config).json);
  REQUIRE(doc["diagnostics"].size() >= 1);
  CHECK(doc["diagnostics"][0]["severity"] == "warning");
}
