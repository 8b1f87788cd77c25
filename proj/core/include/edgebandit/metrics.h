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

#ifndef EDGEBANDIT_METRICS_H_
#define EDGEBANDIT_METRICS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "edgebandit/model.h"
#include "edgebandit/policies.h"

namespace edgebandit {

// Which learner-side value enters the reward regret. kExpected compares
// noise-free rewards on both sides; kRealized charges the learner its
// realized reward and gives the benchmark the same round's noise.
enum class RegretMode { kExpected, kRealized };

struct RoundRow {
  std::int64_t t = 0;
  GroupIndex group = 0;  // 0-based, kLocalGroup for the on-device baseline
  int arm_id = 0;
  bool attacked = false;
  double reward = 0.0;           // realized
  double expected_reward = 0.0;  // a(g) theta^T x, no noise
  double oracle_reward = 0.0;    // benchmark's reward this round
  double switch_cost = 0.0;
};

struct RunRecord {
  std::string policy;
  std::uint64_t seed = 0;
  int num_groups = 0;
  double tau = 1.0;
  RegretMode regret_mode = RegretMode::kExpected;
  GroupIndex oracle_group = 0;

  std::vector<RoundRow> rows;
  std::vector<std::vector<double>> sampling;    // [t][g]
  std::vector<std::vector<double>> pred_error;  // [t][g], empty rows if n/a
  std::vector<AttackVector> attacks;

  // Streamed alongside the simulation.
  std::vector<double> cum_reward;
  std::vector<double> cum_regret;
  std::vector<double> cum_switch_cost;

  std::int64_t horizon() const { return static_cast<std::int64_t>(rows.size()); }
};

// Partial sums of (oracle_rewards[t] - learner value[t]).
std::vector<double> RewardRegret(const RunRecord& record,
                                 std::span<const double> oracle_rewards);
std::vector<double> RewardRegret(const RunRecord& record);

// S_t with the convention that round 1 is always a switch.
std::vector<double> SwitchingRegret(const RunRecord& record);

// R_T + S_T.
double TotalRegret(const RunRecord& record);

// ||theta_hat_g - theta_g|| for every group.
std::vector<double> PredictionError(std::span<const RidgeState> ridge,
                                    std::span<const GroupParameter> thetas);

// Number of group changes (round 1 included) in the group column.
std::int64_t CountSwitches(std::span<const RoundRow> rows);

}  // namespace edgebandit

#endif  // EDGEBANDIT_METRICS_H_
