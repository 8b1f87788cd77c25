// Copyright 2026 The edgebandit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EDGEBANDIT_ERRORS_H_
#define EDGEBANDIT_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace edgebandit {

// Raised when a caller breaks an operation's precondition (dimension
// mismatch, invalid probability, out-of-range index).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised for invalid user-supplied configuration, scenario or profile data.
// Carries every diagnostic found, not only the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> diagnostics);
  explicit ConfigError(const std::string& diagnostic)
      : ConfigError(std::vector<std::string>{diagnostic}) {}

  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

}  // namespace edgebandit

#endif  // EDGEBANDIT_ERRORS_H_
