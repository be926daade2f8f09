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
#include <string>
#include <vector>

#include <json.hpp>

namespace dslab {

enum class ExperimentKind { Wlln, Slln, Clt, LogScaling, Bias, Oracle, Conditions };

const char* experiment_name(ExperimentKind kind);
ExperimentKind experiment_from_name(const std::string& name);

/// Validation outcome entry. Errors block a run; warnings annotate it (the
/// negative-control configurations are legal by design and only warned
/// about). `precondition` distinguishes numeric precondition failures (CLI
/// exit 3) from schema problems (exit 2).
struct ConfigDiagnostic {
  enum class Severity { Warning, Error };
  Severity severity = Severity::Error;
  bool precondition = false;
  std::string message;

  nlohmann::json to_json() const;
};

/// Schema and cross-field checks; never throws on bad configs — everything
/// is reported as diagnostics.
std::vector<ConfigDiagnostic> validate_config(const nlohmann::json& config);

/// Canonical form: defaults filled in, fields restricted to the schema, keys
/// sorted (dump order). Throws Error(validation/precondition) when
/// validate_config would report errors.
nlohmann::json normalize_config(const nlohmann::json& config);

/// FNV-1a over the canonical dump, as 16 hex digits. Artifact names derive
/// from this, so identical effective configs land on identical files.
std::string config_hash(const nlohmann::json& canonical);

}  // namespace dslab
