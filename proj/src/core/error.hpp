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

#include <stdexcept>
#include <string>

namespace dslab {

// Error categories; kept in sync with the status codes of the C API and the
// CLI exit codes (validation -> 2, precondition -> 3).
enum class errc {
  invalid_argument,  // malformed call (bad sizes, out-of-range parameters)
  validation,        // config/schema problems
  precondition,      // numeric precondition violated (e.g. infinite variance)
  overflow,          // enumeration state space too large
  internal,          // should not happen
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace dslab
