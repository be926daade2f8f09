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

namespace dslab {

/// Shortest round-trip decimal form (std::to_chars); byte-stable across runs.
std::string format_double(double v);

/// Minimal CSV assembly; cells are written verbatim (no quoting — the column
/// contracts contain no separators).
class CsvBuilder {
 public:
  explicit CsvBuilder(const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  const std::string& str() const noexcept { return out_; }

 private:
  std::size_t columns_;
  std::string out_;
};

}  // namespace dslab
