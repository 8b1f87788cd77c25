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

#include "edgebandit/errors.h"

#include <string>
#include <utility>
#include <vector>

namespace edgebandit {
namespace {

std::string JoinDiagnostics(const std::vector<std::string>& diagnostics) {
  if (diagnostics.empty()) return "invalid configuration";
  std::string out = diagnostics.front();
  for (size_t i = 1; i < diagnostics.size(); ++i) {
    out += "; ";
    out += diagnostics[i];
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : std::runtime_error(JoinDiagnostics(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

}  // namespace edgebandit
