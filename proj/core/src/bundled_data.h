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

#ifndef EDGEBANDIT_SRC_BUNDLED_DATA_H_
#define EDGEBANDIT_SRC_BUNDLED_DATA_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace edgebandit::internal {

// Contents of a file from core/data, compiled into the library.
std::optional<std::string_view> BundledFile(std::string_view name);
std::vector<std::string> BundledFileNames();

}  // namespace edgebandit::internal

#endif  // EDGEBANDIT_SRC_BUNDLED_DATA_H_
