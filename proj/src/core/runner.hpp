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

#include <string>

#include <json.hpp>

namespace dslab {

/// One finished run: basename "<experiment>-<config hash>" plus the CSV and
/// JSON artifact bodies. The JSON embeds the canonical config, its hash, the
/// master seed and the library version, so any artifact can be regenerated
/// exactly from itself. Both bodies are byte-deterministic in (config, seed)
/// and independent of the worker count.
struct RunArtifacts {
  std::string basename;
  std::string csv;
  std::string json;
};

/// Validates, runs the configured experiment and assembles the artifacts.
/// Throws Error(validation) / Error(precondition) for rejected configs.
RunArtifacts run_experiment(const nlohmann::json& config, int workers = 1);

}  // namespace dslab
