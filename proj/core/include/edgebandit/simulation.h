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

#ifndef EDGEBANDIT_SIMULATION_H_
#define EDGEBANDIT_SIMULATION_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "edgebandit/adversaries.h"
#include "edgebandit/edge_env.h"
#include "edgebandit/metrics.h"
#include "edgebandit/model.h"
#include "edgebandit/policies.h"
#include "edgebandit/rng.h"

namespace edgebandit {

// A group linear bandit instance with a finite catalog of per-round arm sets
// ("tasks"). The runner draws one task per round.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual int num_groups() const = 0;
  virtual std::span<const int> dims() const = 0;
  virtual int num_tasks() const = 0;
  virtual std::span<const ArmSet> armsets(int task) const = 0;
  virtual const Arm* local_arm(int /*task*/) const { return nullptr; }
  // Unattacked, noise-free reward of a decision.
  virtual double ExpectedReward(int task, const PolicyDecision& d) const = 0;
  virtual std::span<const GroupParameter> thetas() const = 0;
  // Per-group max expected reward for the task.
  virtual const std::vector<double>& optimal_values(int task) const = 0;
  // Arm played by the fixed-arm EXP3 baseline.
  virtual int designated_arm_id() const { return 0; }
};

// Edge scenario viewed as a bandit: task index = profile index.
class EdgeEnvironment : public Environment {
 public:
  explicit EdgeEnvironment(std::shared_ptr<const EdgeScenario> scenario);

  int num_groups() const override { return scenario_->num_groups(); }
  std::span<const int> dims() const override { return scenario_->dims(); }
  int num_tasks() const override { return scenario_->num_profiles(); }
  std::span<const ArmSet> armsets(int task) const override {
    return scenario_->armsets(task);
  }
  const Arm* local_arm(int task) const override {
    return &scenario_->local_arm(task);
  }
  double ExpectedReward(int task, const PolicyDecision& d) const override {
    return scenario_->ExpectedReward(task, d);
  }
  std::span<const GroupParameter> thetas() const override {
    return scenario_->thetas();
  }
  const std::vector<double>& optimal_values(int task) const override {
    return scenario_->optimal_values(task);
  }
  // All layers on the path's last node: every split is 0.
  int designated_arm_id() const override { return 0; }

  const EdgeScenario& scenario() const { return *scenario_; }

 private:
  std::shared_ptr<const EdgeScenario> scenario_;
};

// Plain linear groups with explicit parameters and arm sets, for studying the
// learner without the delay model.
class LinearEnvironment : public Environment {
 public:
  // tasks[k][g] is the arm set of group g when task k is drawn.
  LinearEnvironment(std::vector<GroupParameter> thetas,
                    std::vector<std::vector<ArmSet>> tasks);

  int num_groups() const override { return static_cast<int>(thetas_.size()); }
  std::span<const int> dims() const override { return dims_; }
  int num_tasks() const override { return static_cast<int>(tasks_.size()); }
  std::span<const ArmSet> armsets(int task) const override {
    return tasks_[task];
  }
  double ExpectedReward(int task, const PolicyDecision& d) const override;
  std::span<const GroupParameter> thetas() const override { return thetas_; }
  const std::vector<double>& optimal_values(int task) const override {
    return optimal_values_[task];
  }
  int designated_arm_id() const override { return designated_; }

 private:
  std::vector<GroupParameter> thetas_;
  std::vector<std::vector<ArmSet>> tasks_;
  std::vector<int> dims_;
  std::vector<std::vector<double>> optimal_values_;
  int designated_ = 0;
};

// Draws the task index of round t from the task stream.
using TaskDraw = std::function<int(std::int64_t t, CounterRng& rng)>;

// State visible after the policy chose and the reward was realized, before
// the policy update.
struct RoundObservation {
  std::int64_t t = 0;
  int task = 0;
  const PolicyDecision* decision = nullptr;
  const AttackVector* attack = nullptr;
  double reward = 0.0;
  const Policy* policy = nullptr;
};

struct SimulationOptions {
  std::int64_t horizon = 1;
  std::uint64_t seed = 1;
  NoiseSpec noise = NoiseSpec::Uniform(-0.05, 0.05);
  AttackerSpec attacker = AttackerSpec::None();
  RegretMode regret_mode = RegretMode::kExpected;
  double tau = 1.0;
  bool record_pred_error = true;
  std::function<void(const RoundObservation&)> observer;
};

// One run of `policy`. The benchmark group is fixed after the run from the
// realized attack sequence.
RunRecord Simulate(const Environment& env, Policy& policy,
                   const TaskDraw& tasks, const SimulationOptions& options);

// Hindsight-best static group for this seed. Each candidate is scored
// against the attacks it would itself face when played every round (for
// oblivious attackers this is one shared sequence).
GroupIndex OracleGroupForRun(const Environment& env, const TaskDraw& tasks,
                             const SimulationOptions& options);

std::unique_ptr<Policy> MakePolicy(PolicyKind kind, const PolicyConfig& config,
                                   const Environment& env,
                                   GroupIndex oracle_group = 0);

// MakePolicy + Simulate; resolves the oracle's group first when needed.
RunRecord RunPolicy(const Environment& env, PolicyKind kind,
                    const PolicyConfig& config, const TaskDraw& tasks,
                    const SimulationOptions& options);

}  // namespace edgebandit

#endif  // EDGEBANDIT_SIMULATION_H_
