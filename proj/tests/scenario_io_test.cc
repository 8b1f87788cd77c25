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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "edgebandit/errors.h"

namespace edgebandit {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> DiagnosticsOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.diagnostics();
  }
  return {};
}

bool AnyContains(const std::vector<std::string>& diags, const std::string& needle) {
  return std::any_of(diags.begin(), diags.end(), [&](const std::string& d) {
    return d.find(needle) != std::string::npos;
  });
}

DnnProfile ParseCsv(const std::string& text) {
  std::istringstream in(text);
  return ParseDnnProfileCsv(in, "net");
}

TEST(DnnProfileCsv, ParsesLayersAndComments) {
  const DnnProfile p = ParseCsv(
      "# toy\n"
      "layer,workload_mac,output_bits\n"
      "input,0,600\n"
      "conv1,4e6,300\n"
      "\n"
      "fc, 8e6 , 100\n");
  EXPECT_EQ(p.name(), "net");
  EXPECT_EQ(p.num_layers(), 2);
  EXPECT_EQ(p.input_size(), 600.0);
  EXPECT_EQ(p.workload(2), 8e6);
  EXPECT_EQ(p.size_at(1), 300.0);
  EXPECT_EQ(p.size_at(2), 100.0);
}

TEST(DnnProfileCsv, FormatRoundTrips) {
  const DnnProfile yolo = BundledProfile("yolo");
  std::istringstream in(FormatDnnProfileCsv(yolo));
  const DnnProfile back = ParseDnnProfileCsv(in, "yolo");
  ASSERT_EQ(back.num_layers(), yolo.num_layers());
  EXPECT_EQ(back.input_size(), yolo.input_size());
  for (int l = 1; l <= yolo.num_layers(); ++l) {
    EXPECT_EQ(back.workload(l), yolo.workload(l));
    EXPECT_EQ(back.size_at(l), yolo.size_at(l));
  }
}

TEST(DnnProfileCsv, ReportsEveryBadLine) {
  const auto diags = DiagnosticsOf([] {
    ParseCsv("layer,workload_mac,output_bits\ninput,0,10\nconv,abc,5\nfc,1\ninput,0,3\n");
  });
  ASSERT_EQ(diags.size(), 3u);
  EXPECT_TRUE(AnyContains(diags, "line 3: non-numeric"));
  EXPECT_TRUE(AnyContains(diags, "line 4: expected 3 columns"));
  EXPECT_TRUE(AnyContains(diags, "line 5: 'input' row may only appear once"));

  EXPECT_TRUE(AnyContains(DiagnosticsOf([] { ParseCsv("a,b,c\n"); }), "expected header"));
  EXPECT_TRUE(AnyContains(DiagnosticsOf([] { ParseCsv(""); }), "empty profile"));
  EXPECT_TRUE(AnyContains(
      DiagnosticsOf([] { ParseCsv("layer,workload_mac,output_bits\nconv,1,2\n"); }),
      "first data row"));
}

TEST(Bundled, ProfilesAndScenariosLoad) {
  EXPECT_EQ(BundledProfile("yolo").num_layers(), 12);
  EXPECT_EQ(BundledProfile("resnet").num_layers(), 12);
  EXPECT_THROW(BundledProfile("vgg"), ConfigError);

  auto names = BundledScenarioNames();
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"multihop", "single-relay"}));

  const ScenarioSpec relay = BundledScenario("single-relay");
  EXPECT_EQ(relay.paths.size(), 4u);
  EXPECT_EQ(relay.profiles.size(), 2u);
  EXPECT_EQ(relay.profile_deadlines.at("yolo"), 0.8);
  EXPECT_EQ(relay.profile_deadlines.at("resnet"), 1.1);
  EXPECT_EQ(relay.deadline, 1.1);
  EXPECT_EQ(relay.paths[2].links, (std::vector<std::string>{"uplink3"}));

  const ScenarioSpec multi = BundledScenario("multihop");
  EXPECT_EQ(multi.deadline, 1.5);
  EXPECT_TRUE(multi.profile_deadlines.empty());
  EXPECT_EQ(multi.destination, "cloud");

  const auto diags = DiagnosticsOf([] { BundledScenario("nowhere"); });
  EXPECT_TRUE(AnyContains(diags, "single-relay"));
}

constexpr const char* kScenario = R"({
  "name": "tiny",
  "nodes": [{"id": "a", "mac_per_s": 2.0}, {"id": "b", "mac_per_s": 4.0}],
  "links": [{"id": "ab", "from": "a", "to": "b", "bits_per_s": 10.0},
            {"id": "ab2", "from": "a", "to": "b", "bits_per_s": 20.0}],
  "paths": [{"nodes": ["a", "b"], "links": ["ab"]},
            {"nodes": ["a", "b"], "links": ["ab2"]}],
  "profiles": {"net": "net.csv"},
  "deadline_s": 7.0,
  "tau": 0.5,
  "bias": 0.4,
  "workload_unit": 1,
  "data_unit": 1,
  "prune": false
})";

class ScenarioFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("edgebandit_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    std::ofstream(dir_ / "net.csv") << "layer,workload_mac,output_bits\ninput,0,6\n"
                                       "l1,4,3\nl2,8,1\n";
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(ScenarioFiles, ParsesDocumentWithRelativeProfile) {
  const ScenarioSpec spec = ParseScenarioJson(kScenario, dir_);
  EXPECT_EQ(spec.name, "tiny");
  EXPECT_EQ(spec.deadline, 7.0);
  EXPECT_EQ(spec.tau, 0.5);
  EXPECT_EQ(spec.bias, 0.4);
  EXPECT_FALSE(spec.prune);
  ASSERT_EQ(spec.paths.size(), 2u);
  EXPECT_EQ(spec.paths[0].links, (std::vector<std::string>{"ab"}));
  EXPECT_EQ(spec.paths[1].links, (std::vector<std::string>{"ab2"}));
  EXPECT_EQ(spec.profiles.at(0).num_layers(), 2);

  std::ofstream(dir_ / "tiny.json") << kScenario;
  EXPECT_EQ(LoadScenarioJson(dir_ / "tiny.json").profiles.at(0).size_at(0), 6.0);
  EXPECT_EQ(ResolveScenario((dir_ / "tiny.json").string()).name, "tiny");
  EXPECT_THROW(ResolveScenario((dir_ / "missing.json").string()), ConfigError);
}

TEST_F(ScenarioFiles, ParallelLinksNeedExplicitChoice) {
  std::string doc = kScenario;
  const std::string explicit_path = R"({"nodes": ["a", "b"], "links": ["ab"]})";
  doc.replace(doc.find(explicit_path), explicit_path.size(), R"(["a", "b"])");
  EXPECT_TRUE(AnyContains(DiagnosticsOf([&] { ParseScenarioJson(doc, dir_); }),
                          "paths[0]: 2 links from 'a' to 'b'"));
}

TEST_F(ScenarioFiles, DeadlineMap) {
  std::string doc = kScenario;
  doc.replace(doc.find("\"deadline_s\": 7.0"), 17, R"("deadline_s": {"net": 6.5})");
  const ScenarioSpec spec = ParseScenarioJson(doc, dir_);
  EXPECT_EQ(spec.profile_deadlines.at("net"), 6.5);
  EXPECT_EQ(spec.deadline, 6.5);

  std::string bad = kScenario;
  bad.replace(bad.find("\"deadline_s\": 7.0"), 17, R"("deadline_s": {"net": "soon"})");
  EXPECT_TRUE(AnyContains(DiagnosticsOf([&] { ParseScenarioJson(bad, dir_); }),
                          "deadline_s.net must be a number"));
}

TEST_F(ScenarioFiles, CollectsAllDiagnostics) {
  const std::string doc = R"({
    "name": "broken",
    "nodes": [{"id": "a", "mac_per_s": 2.0}, {"id": "b"}],
    "links": [{"id": "ab", "from": "a", "to": "b", "bits_per_s": 10.0}],
    "paths": [["a", "c"]],
    "profiles": {"net": "absent.csv"},
    "deadline_s": 7.0,
    "prune": "yes",
    "colour": 3
  })";
  const auto diags = DiagnosticsOf([&] { ParseScenarioJson(doc, dir_); });
  EXPECT_GE(diags.size(), 4u);
  EXPECT_TRUE(AnyContains(diags, "unknown key 'colour'"));
  EXPECT_TRUE(AnyContains(diags, "mac_per_s"));
  EXPECT_TRUE(AnyContains(diags, "absent.csv"));
  EXPECT_TRUE(AnyContains(diags, "'prune' must be true or false"));

  EXPECT_TRUE(AnyContains(DiagnosticsOf([&] { ParseScenarioJson("{not json", dir_); }),
                          "scenario:"));
  EXPECT_TRUE(AnyContains(DiagnosticsOf([&] { ParseScenarioJson("[1]", dir_); }),
                          "top level"));
}

}  // namespace
}  // namespace edgebandit
