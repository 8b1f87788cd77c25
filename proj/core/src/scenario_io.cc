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

#include "edgebandit/scenario_io.h"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "bundled_data.h"
#include "edgebandit/errors.h"

namespace edgebandit {
namespace {

using nlohmann::json;

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(Trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::optional<double> ParseNumber(const std::string& text) {
  if (text.empty()) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (errno != 0 || end != text.c_str() + text.size()) return std::nullopt;
  return v;
}

std::string ReadFile(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + file.string() + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

constexpr std::string_view kBuiltinPrefix = "builtin:";

}  // namespace

DnnProfile ParseDnnProfileCsv(std::istream& in, const std::string& name) {
  std::vector<std::string> problems;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::optional<double> input_size;
  std::vector<DnnLayer> layers;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const std::string where = fmt::format("{} line {}", name, line_no);
    const std::vector<std::string> cells = SplitCsv(trimmed);
    if (!header_seen) {
      if (cells != std::vector<std::string>{"layer", "workload_mac", "output_bits"}) {
        problems.push_back(where + ": expected header 'layer,workload_mac,output_bits'");
        break;
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != 3) {
      problems.push_back(where + ": expected 3 columns");
      continue;
    }
    const std::optional<double> work = ParseNumber(cells[1]);
    const std::optional<double> bits = ParseNumber(cells[2]);
    if (!work || !bits) {
      problems.push_back(where + ": non-numeric value");
      continue;
    }
    if (!input_size) {
      if (cells[0] != "input" || *work != 0.0) {
        problems.push_back(where + ": first data row must be 'input,0,<bits>'");
        continue;
      }
      input_size = *bits;
      continue;
    }
    if (cells[0] == "input") {
      problems.push_back(where + ": 'input' row may only appear once");
      continue;
    }
    layers.push_back(DnnLayer{*work, *bits});
  }
  if (!header_seen && problems.empty()) problems.push_back(name + ": empty profile");
  if (header_seen && !input_size && problems.empty()) {
    problems.push_back(name + ": missing 'input' row");
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return DnnProfile(name, *input_size, std::move(layers));
}

DnnProfile LoadDnnProfileCsv(const std::filesystem::path& file,
                             const std::string& name) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open profile '" + file.string() + "'");
  return ParseDnnProfileCsv(in, name);
}

std::string FormatDnnProfileCsv(const DnnProfile& dnn) {
  std::string out = "layer,workload_mac,output_bits\n";
  out += fmt::format("input,0,{:.17g}\n", dnn.input_size());
  for (int l = 1; l <= dnn.num_layers(); ++l) {
    out += fmt::format("layer{},{:.17g},{:.17g}\n", l, dnn.workload(l),
                       dnn.size_at(l));
  }
  return out;
}

ScenarioSpec ParseScenarioJson(std::string_view text,
                               const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("scenario: top level must be an object");

  std::vector<std::string> problems;
  static const std::set<std::string> kKeys{
      "name",   "nodes",         "links",     "paths",          "profiles",
      "deadline_s", "tau",       "source",    "destination",    "bias",
      "workload_unit", "data_unit", "prune",  "local_delivery"};
  for (const auto& [key, value] : doc.items()) {
    if (!kKeys.count(key)) problems.push_back("scenario: unknown key '" + key + "'");
  }

  auto number = [&](const json& obj, const char* key, const std::string& where)
      -> std::optional<double> {
    if (!obj.contains(key)) {
      problems.push_back(where + ": missing '" + key + "'");
      return std::nullopt;
    }
    if (!obj[key].is_number()) {
      problems.push_back(where + ": '" + key + "' must be a number");
      return std::nullopt;
    }
    return obj[key].get<double>();
  };
  auto string = [&](const json& obj, const char* key, const std::string& where)
      -> std::string {
    if (!obj.contains(key) || !obj[key].is_string()) {
      problems.push_back(where + ": '" + key + "' must be a string");
      return {};
    }
    return obj[key].get<std::string>();
  };

  ScenarioSpec spec;
  spec.name = doc.value("name", std::string("scenario"));

  std::vector<Node> nodes;
  std::vector<Link> links;
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    problems.push_back("scenario: 'nodes' must be an array");
  } else {
    for (size_t i = 0; i < doc["nodes"].size(); ++i) {
      const json& n = doc["nodes"][i];
      const std::string where = fmt::format("nodes[{}]", i);
      if (!n.is_object()) {
        problems.push_back(where + ": must be an object");
        continue;
      }
      Node node;
      node.id = string(n, "id", where);
      node.speed = number(n, "mac_per_s", where).value_or(0.0);
      nodes.push_back(std::move(node));
    }
  }
  if (doc.contains("links")) {
    if (!doc["links"].is_array()) {
      problems.push_back("scenario: 'links' must be an array");
    } else {
      for (size_t i = 0; i < doc["links"].size(); ++i) {
        const json& e = doc["links"][i];
        const std::string where = fmt::format("links[{}]", i);
        if (!e.is_object()) {
          problems.push_back(where + ": must be an object");
          continue;
        }
        Link link;
        link.id = string(e, "id", where);
        link.from = string(e, "from", where);
        link.to = string(e, "to", where);
        link.rate = number(e, "bits_per_s", where).value_or(0.0);
        links.push_back(std::move(link));
      }
    }
  }

  if (problems.empty()) {
    try {
      spec.graph = NetworkGraph(nodes, links);
    } catch (const ConfigError& e) {
      for (const std::string& d : e.diagnostics()) problems.push_back(d);
    }
  }

  if (!doc.contains("paths") || !doc["paths"].is_array() || doc["paths"].empty()) {
    problems.push_back("scenario: 'paths' must be a non-empty array");
  } else if (problems.empty()) {
    for (size_t i = 0; i < doc["paths"].size(); ++i) {
      const json& p = doc["paths"][i];
      const std::string where = fmt::format("paths[{}]", i);
      InferencePath path;
      const json* node_list = &p;
      if (p.is_object()) {
        if (!p.contains("nodes")) {
          problems.push_back(where + ": missing 'nodes'");
          continue;
        }
        node_list = &p["nodes"];
        if (p.contains("links")) {
          for (const json& e : p["links"]) {
            if (e.is_string()) path.links.push_back(e.get<std::string>());
          }
        }
      }
      if (!node_list->is_array()) {
        problems.push_back(where + ": node list must be an array of ids");
        continue;
      }
      for (const json& n : *node_list) {
        if (n.is_string()) path.nodes.push_back(n.get<std::string>());
      }
      if (path.nodes.size() != node_list->size()) {
        problems.push_back(where + ": node ids must be strings");
        continue;
      }
      if (!p.is_object() || !p.contains("links")) {
        // Infer the unique link between consecutive nodes.
        for (size_t j = 0; j + 1 < path.nodes.size(); ++j) {
          std::vector<std::string> found;
          for (const Link& e : spec.graph.links()) {
            if (e.from == path.nodes[j] && e.to == path.nodes[j + 1]) {
              found.push_back(e.id);
            }
          }
          if (found.size() != 1) {
            problems.push_back(fmt::format(
                "{}: {} links from '{}' to '{}'; list the links explicitly",
                where, found.size(), path.nodes[j], path.nodes[j + 1]));
            break;
          }
          path.links.push_back(found.front());
        }
      }
      for (const std::string& d : path.Validate(spec.graph)) {
        problems.push_back(where + ": " + d);
      }
      spec.paths.push_back(std::move(path));
    }
  }

  if (!doc.contains("profiles") || !doc["profiles"].is_object() ||
      doc["profiles"].empty()) {
    problems.push_back("scenario: 'profiles' must map names to CSV files");
  } else {
    for (const auto& [name, ref] : doc["profiles"].items()) {
      if (!ref.is_string()) {
        problems.push_back("profiles." + name + ": must be a string");
        continue;
      }
      const std::string where = ref.get<std::string>();
      try {
        if (where.rfind(kBuiltinPrefix, 0) == 0) {
          DnnProfile builtin = BundledProfile(where.substr(kBuiltinPrefix.size()));
          spec.profiles.emplace_back(name, builtin.input_size(), builtin.layers());
        } else {
          std::filesystem::path file(where);
          if (file.is_relative()) file = base_dir / file;
          spec.profiles.push_back(LoadDnnProfileCsv(file, name));
        }
      } catch (const ConfigError& e) {
        for (const std::string& d : e.diagnostics()) {
          problems.push_back("profiles." + name + ": " + d);
        }
      }
    }
  }

  // Either one deadline for every profile or a {profile: seconds} map.
  if (doc.contains("deadline_s") && doc["deadline_s"].is_object()) {
    double longest = 0.0;
    for (const auto& [name, value] : doc["deadline_s"].items()) {
      if (!value.is_number()) {
        problems.push_back("scenario: deadline_s." + name + " must be a number");
        continue;
      }
      spec.profile_deadlines[name] = value.get<double>();
      longest = std::max(longest, value.get<double>());
    }
    if (spec.profile_deadlines.empty()) {
      problems.push_back("scenario: deadline_s map is empty");
    } else {
      spec.deadline = longest;
    }
  } else if (auto d = number(doc, "deadline_s", "scenario")) {
    spec.deadline = *d;
  }
  if (doc.contains("tau")) {
    if (auto t = number(doc, "tau", "scenario")) spec.tau = *t;
  }
  for (const char* key : {"bias", "workload_unit", "data_unit"}) {
    if (!doc.contains(key)) continue;
    if (auto v = number(doc, key, "scenario")) {
      if (std::string_view(key) == "bias") spec.bias = *v;
      if (std::string_view(key) == "workload_unit") spec.workload_unit = *v;
      if (std::string_view(key) == "data_unit") spec.data_unit = *v;
    }
  }
  for (const char* key : {"prune", "local_delivery"}) {
    if (!doc.contains(key)) continue;
    if (!doc[key].is_boolean()) {
      problems.push_back(std::string("scenario: '") + key + "' must be true or false");
      continue;
    }
    (std::string_view(key) == "prune" ? spec.prune : spec.local_delivery) =
        doc[key].get<bool>();
  }
  for (const char* key : {"source", "destination"}) {
    if (!doc.contains(key)) continue;
    const std::string id = string(doc, key, "scenario");
    if (!id.empty() && problems.empty() && !spec.graph.has_node(id)) {
      problems.push_back(std::string("scenario: ") + key + " '" + id +
                         "' is not a node");
    }
    (std::string_view(key) == "source" ? spec.source : spec.destination) = id;
  }

  if (!problems.empty()) throw ConfigError(std::move(problems));
  return spec;
}

ScenarioSpec LoadScenarioJson(const std::filesystem::path& file) {
  return ParseScenarioJson(ReadFile(file), file.parent_path());
}

DnnProfile BundledProfile(std::string_view name) {
  const auto text = internal::BundledFile(std::string(name) + ".csv");
  if (!text) throw ConfigError("no builtin profile '" + std::string(name) + "'");
  std::istringstream in{std::string(*text)};
  return ParseDnnProfileCsv(in, std::string(name));
}

ScenarioSpec BundledScenario(std::string_view name) {
  const auto text = internal::BundledFile(std::string(name) + ".json");
  if (!text) {
    std::string known;
    for (const std::string& n : BundledScenarioNames()) {
      known += (known.empty() ? "" : ", ") + n;
    }
    throw ConfigError("no builtin scenario '" + std::string(name) +
                      "' (known: " + known + ")");
  }
  return ParseScenarioJson(*text, {});
}

std::vector<std::string> BundledScenarioNames() {
  std::vector<std::string> out;
  for (const std::string& file : internal::BundledFileNames()) {
    const std::filesystem::path p(file);
    if (p.extension() == ".json") out.push_back(p.stem().string());
  }
  return out;
}

ScenarioSpec ResolveScenario(const std::string& name_or_path) {
  for (const std::string& n : BundledScenarioNames()) {
    if (n == name_or_path) return BundledScenario(n);
  }
  if (std::filesystem::exists(name_or_path)) return LoadScenarioJson(name_or_path);
  std::string known;
  for (const std::string& n : BundledScenarioNames()) {
    known += (known.empty() ? "" : ", ") + n;
  }
  throw ConfigError("scenario '" + name_or_path +
                    "' is neither a builtin (" + known + ") nor a readable file");
}

}  // namespace edgebandit
