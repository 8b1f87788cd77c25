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

// edgebandit: run, sweep and inspect edge-inference bandit experiments.
//
//   edgebandit sim --preset mixed --seeds 1-20 --out results
//   edgebandit sweep --preset yolo --preset resnet --seeds 1-5
//   edgebandit oracle --preset mixed --seeds 1-3
//   edgebandit prune --scenario single-relay
//   edgebandit validate --config experiment.json

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "edgebandit/edge_env.h"
#include "edgebandit/errors.h"
#include "edgebandit/policies.h"
#include "edgebandit/runner.h"
#include "edgebandit/scenario_io.h"
#include "edgebandit/simulation.h"

namespace eb = edgebandit;

namespace {

constexpr int kExitInvalid = 2;

struct Flags {
  std::vector<std::string> presets;
  std::string config;
  std::string algo;
  std::string tasks;
  std::string seeds;
  std::string out;
  std::string attacker;
  std::string scenario;
  std::optional<std::int64_t> horizon;
  std::optional<int> jobs;
};

void AddExperimentFlags(CLI::App* cmd, Flags& f, bool many_presets) {
  if (many_presets) {
    cmd->add_option("--preset", f.presets, "Preset names, or 'all'");
  } else {
    cmd->add_option("--preset", f.presets, "Preset name")->expected(1);
  }
  cmd->add_option("--config", f.config, "Experiment JSON document");
  cmd->add_option("--algo", f.algo, "Comma-separated policy names");
  cmd->add_option("--tasks", f.tasks, "yolo | resnet | mixed[:p] | shift[:a:b:round]");
  cmd->add_option("--seeds", f.seeds, "Seed list: 7, 1-20 or 1,4,9");
  cmd->add_option("--out", f.out, "Output root (default $EDGEBANDIT_OUT or ./results)");
  cmd->add_option("--attacker", f.attacker, "none | oblivious | adaptive | shift");
  cmd->add_option("--scenario", f.scenario, "Builtin scenario name or JSON path");
  cmd->add_option("--horizon", f.horizon, "Rounds per run");
  cmd->add_option("--jobs", f.jobs, "Concurrent runs");
}

// Starting point (config file or preset) with the command-line overrides.
eb::ExperimentConfig BuildConfig(const Flags& f, const std::string& preset) {
  eb::ExperimentConfig cfg;
  if (!f.config.empty()) {
    cfg = eb::LoadExperimentConfig(f.config);
  } else if (!preset.empty()) {
    cfg = eb::Preset(preset);
  }
  if (!f.scenario.empty()) cfg.scenario = f.scenario;
  if (!f.tasks.empty()) cfg.tasks = eb::ParseTaskDistribution(f.tasks);
  if (!f.attacker.empty()) {
    cfg.attacker = eb::ParseAttacker(f.attacker, cfg.tasks.switch_round);
  }
  if (!f.algo.empty()) {
    cfg.policies.clear();
    std::string item;
    for (char c : f.algo + ",") {
      if (c != ',') {
        item += c;
      } else if (!item.empty()) {
        cfg.policies.push_back(eb::ParsePolicyKind(item));
        item.clear();
      }
    }
  }
  if (!f.seeds.empty()) cfg.seeds = eb::ParseSeeds(f.seeds);
  if (!f.out.empty()) cfg.out_dir = f.out;
  if (f.horizon) cfg.horizon = *f.horizon;
  if (f.jobs) cfg.jobs = *f.jobs;
  return cfg;
}

void CheckSource(const Flags& f) {
  if (!f.config.empty() && !f.presets.empty()) {
    throw eb::ConfigError("--preset and --config are mutually exclusive; use "
                          "\"preset\" inside the config document instead");
  }
}

void PrintSummary(const std::string& label,
                  const std::vector<eb::RunOutput>& outputs) {
  struct Sum {
    double reward = 0.0, regret = 0.0, switches = 0.0;
    int runs = 0;
    std::string dir;
  };
  std::map<eb::PolicyKind, Sum> by_policy;
  std::vector<eb::PolicyKind> order;
  for (const eb::RunOutput& o : outputs) {
    if (!by_policy.count(o.policy)) order.push_back(o.policy);
    Sum& s = by_policy[o.policy];
    s.reward += o.final_reward;
    s.regret += o.final_regret;
    s.switches += o.final_switch_cost;
    ++s.runs;
    s.dir = o.dir.parent_path().string();
  }
  fmt::print("{}\n", label);
  fmt::print("  {:<14} {:>5} {:>12} {:>12} {:>10}  {}\n", "policy", "runs",
             "reward", "regret", "switch", "output");
  for (eb::PolicyKind kind : order) {
    const Sum& s = by_policy[kind];
    fmt::print("  {:<14} {:>5} {:>12.2f} {:>12.2f} {:>10.2f}  {}\n",
               eb::PolicyKindName(kind), s.runs, s.reward / s.runs,
               s.regret / s.runs, s.switches / s.runs, s.dir);
  }
}

int RunSim(const Flags& f) {
  CheckSource(f);
  if (f.config.empty() && f.presets.empty()) {
    throw eb::ConfigError("sim needs --preset or --config");
  }
  const eb::ExperimentConfig cfg =
      BuildConfig(f, f.presets.empty() ? "" : f.presets.front());
  PrintSummary(cfg.name, eb::RunExperiment(cfg));
  return 0;
}

int RunSweep(Flags f) {
  CheckSource(f);
  std::vector<std::string> presets = f.presets;
  if (presets.empty() || (presets.size() == 1 && presets[0] == "all")) {
    presets = eb::PresetNames();
  }
  if (f.seeds.empty()) f.seeds = "1-20";
  for (const std::string& preset : presets) {
    const eb::ExperimentConfig cfg = BuildConfig(f, preset);
    PrintSummary(cfg.name, eb::RunExperiment(cfg));
  }
  return 0;
}

int RunOracle(const Flags& f) {
  CheckSource(f);
  const eb::ExperimentConfig cfg =
      BuildConfig(f, f.presets.empty() ? "mixed" : f.presets.front());
  std::vector<std::string> problems = cfg.Validate();
  if (!problems.empty()) throw eb::ConfigError(std::move(problems));
  const eb::EdgeEnvironment env(eb::BuildScenario(cfg));
  fmt::print("{}: horizon {}, {} groups\n", cfg.name, cfg.horizon, env.num_groups());
  fmt::print("  {:>6} {:>7} {:>16}\n", "seed", "group", "expected_reward");
  for (std::uint64_t seed : cfg.seeds) {
    const eb::RunRecord record = eb::RunSingle(cfg, env, eb::PolicyKind::kOracle, seed);
    double total = 0.0;
    for (const eb::RoundRow& row : record.rows) total += row.oracle_reward;
    fmt::print("  {:>6} {:>7} {:>16.6f}\n", seed, record.oracle_group + 1, total);
  }
  return 0;
}

int RunPrune(const Flags& f) {
  CheckSource(f);
  std::string name = f.scenario;
  if (name.empty()) {
    name = (f.config.empty() && f.presets.empty())
               ? std::string("single-relay")
               : BuildConfig(f, f.presets.empty() ? "" : f.presets.front()).scenario;
  }
  const eb::ScenarioSpec spec = eb::ResolveScenario(name);
  fmt::print("scenario {}: {} paths, {} profiles\n", spec.name, spec.paths.size(),
             spec.profiles.size());
  for (const eb::DnnProfile& dnn : spec.profiles) {
    const std::vector<int> candidates = eb::PruneSplittingPoints(dnn);
    fmt::print("profile {} ({} layers): candidate splits [{}]\n", dnn.name(),
               dnn.num_layers(), fmt::join(candidates, ", "));
    bool all_destination = true;
    for (size_t g = 0; g < spec.paths.size(); ++g) {
      const eb::InferencePath& path = spec.paths[g];
      const auto full = eb::EnumerateAssignments(path.hops(), dnn);
      const auto pruned = eb::EnumerateAssignments(
          path.hops(), dnn, std::span<const int>(candidates));
      const eb::Degeneracy verdict =
          path.hops() == 0 ? eb::Degeneracy::kInconclusive
                           : eb::DegenerateAssignmentCheck(path, dnn, spec.graph);
      all_destination = all_destination && verdict == eb::Degeneracy::kAllOnDestination;
      fmt::print("  path {} [{}]: {} assignments, {} after pruning, {}\n", g + 1,
                 fmt::join(path.nodes, " -> "), full.size(), pruned.size(),
                 eb::DegeneracyName(verdict));
    }
    if (all_destination && spec.source && spec.destination) {
      if (auto route = eb::DijkstraTransmissionPath(spec.graph, *spec.source,
                                                    *spec.destination)) {
        fmt::print("  every path offloads fully; transmission-only route [{}]\n",
                   fmt::join(route->nodes, " -> "));
      }
    }
  }
  return 0;
}

int RunValidate(const Flags& f) {
  CheckSource(f);
  if (f.config.empty() && f.presets.empty()) {
    throw eb::ConfigError("validate needs --preset or --config");
  }
  const eb::ExperimentConfig cfg =
      BuildConfig(f, f.presets.empty() ? "" : f.presets.front());
  std::vector<std::string> problems = cfg.Validate();
  if (problems.empty()) {
    try {
      const auto scenario = eb::BuildScenario(cfg);
      for (eb::PolicyKind kind : cfg.policies) {
        eb::EffectivePolicyConfig(cfg, kind).Validate();
      }
      fmt::print("ok: {} ({} groups, {} policies, {} seeds, horizon {})\n", cfg.name,
                 scenario->num_groups(), cfg.policies.size(), cfg.seeds.size(),
                 cfg.horizon);
      return 0;
    } catch (const eb::ConfigError& e) {
      problems = e.diagnostics();
    } catch (const eb::ContractError& e) {
      problems = {e.what()};
    }
  }
  for (const std::string& p : problems) std::cerr << "error: " << p << '\n';
  return kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial group linear bandits for collaborative edge inference"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  Flags sim, sweep, oracle, prune, validate;
  AddExperimentFlags(app.add_subcommand("sim", "Run one experiment"), sim, false);
  AddExperimentFlags(app.add_subcommand("sweep", "Run presets over a seed grid"),
                     sweep, true);
  AddExperimentFlags(
      app.add_subcommand("oracle", "Print the best static group per seed"), oracle,
      false);
  AddExperimentFlags(
      app.add_subcommand("prune", "Print candidate splits and degeneracy verdicts"),
      prune, false);
  AddExperimentFlags(app.add_subcommand("validate", "Lint an experiment"), validate,
                     false);

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::warn);

  try {
    if (app.got_subcommand("sim")) return RunSim(sim);
    if (app.got_subcommand("sweep")) return RunSweep(sweep);
    if (app.got_subcommand("oracle")) return RunOracle(oracle);
    if (app.got_subcommand("prune")) return RunPrune(prune);
    if (app.got_subcommand("validate")) return RunValidate(validate);
  } catch (const eb::ConfigError& e) {
    for (const std::string& d : e.diagnostics()) std::cerr << "error: " << d << '\n';
    return kExitInvalid;
  } catch (const eb::ContractError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
