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

#include "edgebandit/simulation.h"

#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "edgebandit/errors.h"

namespace edgebandit {

EdgeEnvironment::EdgeEnvironment(std::shared_ptr<const EdgeScenario> scenario)
    : scenario_(std::move(scenario)) {
  if (!scenario_) throw ContractError("edge environment: null scenario");
}

LinearEnvironment::LinearEnvironment(std::vector<GroupParameter> thetas,
                                     std::vector<std::vector<ArmSet>> tasks)
    : thetas_(std::move(thetas)), tasks_(std::move(tasks)) {
  if (thetas_.empty()) throw ContractError("linear environment: no groups");
  if (tasks_.empty()) throw ContractError("linear environment: no tasks");
  for (const GroupParameter& theta : thetas_) dims_.push_back(theta.size());
  for (const std::vector<ArmSet>& task : tasks_) {
    if (task.size() != thetas_.size()) {
      throw ContractError("linear environment: task must list one arm set per group");
    }
    std::vector<double> best;
    for (GroupIndex g = 0; g < num_groups(); ++g) {
      if (task[g].group() != g) {
        throw ContractError("linear environment: arm sets out of group order");
      }
      if (task[g].arms().front().x.size() != dims_[g]) {
        throw ContractError("linear environment: arm dimension mismatch");
      }
      best.push_back(Dot(thetas_[g], OptimalArm(thetas_[g], task[g]).x));
    }
    optimal_values_.push_back(std::move(best));
  }
  designated_ = tasks_.front().front().arms().front().id;
}

double LinearEnvironment::ExpectedReward(int task, const PolicyDecision& d) const {
  if (d.group < 0 || d.group >= num_groups()) {
    throw ContractError("linear environment: decision group out of range");
  }
  (void)task;
  return Dot(thetas_[d.group], d.arm);
}

namespace {

int DrawTask(const Environment& env, const TaskDraw& tasks, std::int64_t t,
             std::uint64_t seed) {
  CounterRng rng(seed, Stream::kTask, static_cast<std::uint64_t>(t));
  const int task = tasks(t, rng);
  if (task < 0 || task >= env.num_tasks()) {
    throw ContractError("task draw returned " + std::to_string(task));
  }
  return task;
}

}  // namespace

RunRecord Simulate(const Environment& env, Policy& policy,
                   const TaskDraw& tasks, const SimulationOptions& options) {
  if (options.horizon < 1) throw ContractError("simulate: horizon must be >= 1");
  options.noise.Validate();
  const int num_groups = env.num_groups();
  const std::int64_t horizon = options.horizon;
  Attacker attacker(options.attacker, num_groups);

  RunRecord record;
  record.policy = std::string(policy.name());
  record.seed = options.seed;
  record.num_groups = num_groups;
  record.tau = options.tau;
  record.regret_mode = options.regret_mode;
  record.rows.reserve(horizon);
  record.sampling.reserve(horizon);
  record.pred_error.reserve(horizon);
  record.attacks.reserve(horizon);

  std::vector<int> task_of(horizon);
  std::vector<double> noise_of(horizon);
  std::optional<GroupIndex> previous;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const auto round = static_cast<std::uint64_t>(t);
    const int task = DrawTask(env, tasks, t, options.seed);

    CounterRng attack_rng(options.seed, Stream::kAttacker, round);
    AttackVector attack = attacker.Step(t, previous, attack_rng);

    CounterRng policy_rng(options.seed, Stream::kPolicy, round);
    RoundContext ctx{t, env.armsets(task), env.local_arm(task)};
    const PolicyDecision decision = policy.Choose(ctx, policy_rng);

    CounterRng noise_rng(options.seed, Stream::kNoise, round);
    const double noise = DrawNoise(noise_rng, options.noise);

    const bool local = decision.group == kLocalGroup;
    const int flag = local ? 1 : attack.flag(decision.group);
    const double expected = env.ExpectedReward(task, decision);
    const double reward = flag * (expected + noise);

    if (options.observer) {
      options.observer(
          RoundObservation{t, task, &decision, &attack, reward, &policy});
    }
    policy.Update(decision, reward);

    RoundRow row;
    row.t = t;
    row.group = decision.group;
    row.arm_id = decision.arm_id;
    row.attacked = !local && flag == 0;
    row.reward = reward;
    row.expected_reward = flag * expected;
    row.switch_cost = SwitchingCost(decision.group, previous, options.tau);
    record.rows.push_back(row);
    record.sampling.push_back(policy.LastDistribution());
    const auto ridge = policy.ridge_states();
    if (options.record_pred_error && !ridge.empty()) {
      record.pred_error.push_back(PredictionError(ridge, env.thetas()));
    } else {
      record.pred_error.emplace_back();
    }
    record.attacks.push_back(std::move(attack));
    task_of[t - 1] = task;
    noise_of[t - 1] = noise;
    previous = decision.group;
  }

  std::vector<std::vector<double>> values;
  values.reserve(horizon);
  for (std::int64_t i = 0; i < horizon; ++i) {
    values.push_back(env.optimal_values(task_of[i]));
  }
  const GroupIndex gamma = OracleGroupFromValues(record.attacks, values);
  record.oracle_group = gamma;

  double cum_reward = 0.0;
  double cum_regret = 0.0;
  double cum_switch = 0.0;
  record.cum_reward.reserve(horizon);
  record.cum_regret.reserve(horizon);
  record.cum_switch_cost.reserve(horizon);
  for (std::int64_t i = 0; i < horizon; ++i) {
    RoundRow& row = record.rows[i];
    const int flag = record.attacks[i].flag(gamma);
    const double extra =
        options.regret_mode == RegretMode::kRealized ? noise_of[i] : 0.0;
    row.oracle_reward = flag * (values[i][gamma] + extra);
    const double value = options.regret_mode == RegretMode::kExpected
                             ? row.expected_reward
                             : row.reward;
    cum_reward += row.reward;
    cum_regret += row.oracle_reward - value;
    cum_switch += row.switch_cost;
    record.cum_reward.push_back(cum_reward);
    record.cum_regret.push_back(cum_regret);
    record.cum_switch_cost.push_back(cum_switch);
  }
  return record;
}

GroupIndex OracleGroupForRun(const Environment& env, const TaskDraw& tasks,
                             const SimulationOptions& options) {
  const int num_groups = env.num_groups();
  std::vector<int> task_of(options.horizon);
  for (std::int64_t t = 1; t <= options.horizon; ++t) {
    task_of[t - 1] = DrawTask(env, tasks, t, options.seed);
  }
  GroupIndex best = 0;
  double best_total = -std::numeric_limits<double>::infinity();
  for (GroupIndex g = 0; g < num_groups; ++g) {
    Attacker attacker(options.attacker, num_groups);
    std::optional<GroupIndex> previous;
    double total = 0.0;
    for (std::int64_t t = 1; t <= options.horizon; ++t) {
      CounterRng rng(options.seed, Stream::kAttacker, static_cast<std::uint64_t>(t));
      const AttackVector a = attacker.Step(t, previous, rng);
      total += a.flag(g) * env.optimal_values(task_of[t - 1])[g];
      previous = g;
    }
    if (total > best_total) {
      best_total = total;
      best = g;
    }
  }
  return best;
}

std::unique_ptr<Policy> MakePolicy(PolicyKind kind, const PolicyConfig& config,
                                   const Environment& env,
                                   GroupIndex oracle_group) {
  switch (kind) {
    case PolicyKind::kBExpUcb:
      return std::make_unique<BlockedExpUcb>(config, env.dims());
    case PolicyKind::kExpUcb: {
      PolicyConfig unblocked = config;
      unblocked.block_length = 1;
      return std::make_unique<BlockedExpUcb>(unblocked, env.dims());
    }
    case PolicyKind::kLinUcb:
      return std::make_unique<GroupLinUcb>(config, env.dims());
    case PolicyKind::kExp3:
      return std::make_unique<Exp3FixedArm>(config, env.num_groups(),
                                            env.designated_arm_id());
    case PolicyKind::kLocal:
      return std::make_unique<LocalPolicy>(env.num_groups());
    case PolicyKind::kLinUcbRandom:
      return std::make_unique<LinUcbRandom>(config, env.dims());
    case PolicyKind::kOracle: {
      std::vector<GroupParameter> thetas(env.thetas().begin(), env.thetas().end());
      return std::make_unique<OraclePolicy>(oracle_group, std::move(thetas));
    }
  }
  throw ContractError("unknown policy kind");
}

RunRecord RunPolicy(const Environment& env, PolicyKind kind,
                    const PolicyConfig& config, const TaskDraw& tasks,
                    const SimulationOptions& options) {
  GroupIndex gamma = 0;
  if (kind == PolicyKind::kOracle) gamma = OracleGroupForRun(env, tasks, options);
  std::unique_ptr<Policy> policy = MakePolicy(kind, config, env, gamma);
  RunRecord record = Simulate(env, *policy, tasks, options);
  record.policy = std::string(PolicyKindName(kind));
  return record;
}

}  // namespace edgebandit
