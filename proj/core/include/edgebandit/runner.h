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

#ifndef EDGEBANDIT_RUNNER_H_
#define EDGEBANDIT_RUNNER_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edgebandit/adversaries.h"
#include "edgebandit/edge_env.h"
#include "edgebandit/metrics.h"
#include "edgebandit/model.h"
#include "edgebandit/policies.h"
#include "edgebandit/simulation.h"

namespace edgebandit {

// Which DNN a round's task runs. Profiles are looked up by name in the
// scenario; "primary" is the YoLo-like profile, "secondary" the ResNet-like.
struct TaskDistribution {
  enum class Kind { kPrimaryOnly, kSecondaryOnly, kMixed, kShift };

  Kind kind = Kind::kPrimaryOnly;
  double p_primary = 0.5;  // kMixed
  double p_before = 0.8;   // kShift, rounds < switch_round
  double p_after = 0.2;    // kShift, rounds >= switch_round
  std::int64_t switch_round = 2000;
  std::string primary = "yolo";
  std::string secondary = "resnet";

  static TaskDistribution PrimaryOnly() { return {}; }
  static TaskDistribution SecondaryOnly();
  static TaskDistribution Mixed(double p_primary);
  static TaskDistribution Shift(double p_before, double p_after,
                                std::int64_t switch_round);

  // Probability that round t runs the primary profile.
  double PrimaryProbability(std::int64_t t) const;
  std::string Describe() const;
};

// "yolo", "resnet", "mixed:<p>", "shift:<p_before>:<p_after>:<round>".
TaskDistribution ParseTaskDistribution(std::string_view text);

struct ExperimentConfig {
  std::string name = "custom";
  std::string scenario = "single-relay";  // builtin name or document path
  std::optional<double> deadline;         // replaces every profile deadline
  std::optional<double> tau;              // likewise
  TaskDistribution tasks;
  AttackerSpec attacker = AttackerSpec::Oblivious(DefaultObliviousMatrix());
  std::vector<PolicyKind> policies{PolicyKind::kBExpUcb};
  PolicyConfig policy;
  // Derive beta, eta and B from the horizon instead of `policy`.
  bool theorem_schedule = true;
  std::int64_t horizon = 3000;
  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path out_dir;
  NoiseSpec noise = NoiseSpec::Uniform(-0.05, 0.05);
  RegretMode regret_mode = RegretMode::kExpected;
  int jobs = 1;

  // Every violation found, empty when valid. Does not touch the filesystem.
  std::vector<std::string> Validate() const;
};

std::vector<std::string> PresetNames();
// Throws ConfigError listing the known presets for unknown names.
ExperimentConfig Preset(std::string_view name);

// "7", "1-20" or "1,4,9".
std::vector<std::uint64_t> ParseSeeds(std::string_view text);

// "none", "oblivious", "adaptive", "shift".
AttackerSpec ParseAttacker(std::string_view text, std::int64_t switch_round);

// JSON experiment document. Keys mirror ExperimentConfig; "preset" selects a
// starting point that the remaining keys override.
ExperimentConfig ParseExperimentConfigJson(std::string_view text,
                                           const std::filesystem::path& base_dir);
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& file);

// Policy parameters actually used for `kind`: the theorem schedule when
// enabled, B forced to 1 for the unblocked variants.
PolicyConfig EffectivePolicyConfig(const ExperimentConfig& cfg, PolicyKind kind);

// Scenario with the config's deadline override and noise amplitude check.
std::shared_ptr<const EdgeScenario> BuildScenario(const ExperimentConfig& cfg);

// Task draw mapping the distribution onto the scenario's profile indices.
TaskDraw MakeTaskDraw(const TaskDistribution& tasks, const EdgeScenario& scenario);

SimulationOptions MakeSimulationOptions(const ExperimentConfig& cfg,
                                        std::uint64_t seed, double tau);

// One (policy, seed) run without touching the filesystem.
RunRecord RunSingle(const ExperimentConfig& cfg, const EdgeEnvironment& env,
                    PolicyKind kind, std::uint64_t seed);

struct RunOutput {
  PolicyKind policy;
  std::uint64_t seed = 0;
  std::filesystem::path dir;
  double final_reward = 0.0;
  double final_regret = 0.0;
  double final_switch_cost = 0.0;
};

// Validates, pre-flights the output directory, then runs every (policy,
// seed) pair, `jobs` at a time. Results land in
// <out>/<name>/<policy>/seed_<seed>/.
std::vector<RunOutput> RunExperiment(const ExperimentConfig& cfg);

// Throws ConfigError when `dir` cannot be created or written.
void PreflightOutputDir(const std::filesystem::path& dir);

// Writes rounds.csv, sampling.csv, pred_error.csv and run.json into `dir`.
// Each file is written to a temporary name first and renamed into place.
void EmitCsv(const RunRecord& record, const std::filesystem::path& dir,
             const std::string& params_json = "{}");

// Rows of a rounds.csv; group is as written (0 = on-device, servers from 1).
struct ParsedRound {
  std::int64_t t = 0;
  int group = 0;
  int arm_id = 0;
  bool attacked = false;
  double reward = 0.0;
  double cum_reward = 0.0;
  double cum_regret = 0.0;
  double cum_switch_cost = 0.0;
};

std::vector<ParsedRound> ParseRoundsCsv(const std::filesystem::path& file);

// Value formatting used by every CSV column: 9 significant digits.
std::string FormatValue(double v);

// $EDGEBANDIT_OUT, else "results".
std::filesystem::path DefaultOutputDir();

}  // namespace edgebandit

#endif  // EDGEBANDIT_RUNNER_H_
