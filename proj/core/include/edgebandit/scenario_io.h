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

#ifndef EDGEBANDIT_SCENARIO_IO_H_
#define EDGEBANDIT_SCENARIO_IO_H_

// Readers for DNN profile CSVs and scenario documents, plus the profiles and
// scenarios compiled into the library.
//
// Profile CSV:
//   layer,workload_mac,output_bits
//   input,0,<raw input bits>
//   <layer name>,<MAC>,<output bits>
//   ...
//
// Scenario JSON:
//   {
//     "name": "...",
//     "nodes":  [{"id": "mobile", "mac_per_s": 8.255e9}, ...],
//     "links":  [{"id": "l1", "from": "mobile", "to": "s1", "bits_per_s": 5e7}],
//     "paths":  [["mobile", "s1"], ...],          // node ids; links inferred
//     "profiles": {"yolo": "builtin:yolo", "resnet": "profiles/resnet.csv"},
//     "deadline_s": {"yolo": 0.8, "resnet": 1.1},  // or one number for all
//     "tau": 1.0,
//     // optional: "source", "destination", "bias", "workload_unit",
//     //           "data_unit", "prune", "local_delivery"
//   }
// Paths may instead be objects {"nodes": [...], "links": [...]} to pick
// among parallel links explicitly.

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "edgebandit/edge_env.h"

namespace edgebandit {

DnnProfile ParseDnnProfileCsv(std::istream& in, const std::string& name);
DnnProfile LoadDnnProfileCsv(const std::filesystem::path& file,
                             const std::string& name);
std::string FormatDnnProfileCsv(const DnnProfile& dnn);

// `base_dir` resolves relative profile paths.
ScenarioSpec ParseScenarioJson(std::string_view text,
                               const std::filesystem::path& base_dir);
ScenarioSpec LoadScenarioJson(const std::filesystem::path& file);

// Compiled-in data. Profile names: "yolo", "resnet". Scenario names:
// "single-relay", "multihop".
DnnProfile BundledProfile(std::string_view name);
ScenarioSpec BundledScenario(std::string_view name);
std::vector<std::string> BundledScenarioNames();

// Builtin name or path to a scenario document.
ScenarioSpec ResolveScenario(const std::string& name_or_path);

}  // namespace edgebandit

#endif  // EDGEBANDIT_SCENARIO_IO_H_
