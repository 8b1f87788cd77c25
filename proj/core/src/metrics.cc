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

#include "edgebandit/metrics.h"

#include <optional>
#include <string>

#include "edgebandit/edge_env.h"
#include "edgebandit/errors.h"

namespace edgebandit {

std::vector<double> RewardRegret(const RunRecord& record,
                                 std::span<const double> oracle_rewards) {
  if (oracle_rewards.size() != record.rows.size()) {
    throw ContractError("reward regret: " + std::to_string(oracle_rewards.size()) +
                        " oracle rewards for " +
                        std::to_string(record.rows.size()) + " rounds");
  }
  std::vector<double> out;
  out.reserve(record.rows.size());
  double running = 0.0;
  for (size_t i = 0; i < record.rows.size(); ++i) {
    const RoundRow& row = record.rows[i];
    const double value = record.regret_mode == RegretMode::kExpected
                             ? row.expected_reward
                             : row.reward;
    running += oracle_rewards[i] - value;
    out.push_back(running);
  }
  return out;
}

std::vector<double> RewardRegret(const RunRecord& record) {
  std::vector<double> oracle;
  oracle.reserve(record.rows.size());
  for (const RoundRow& row : record.rows) oracle.push_back(row.oracle_reward);
  return RewardRegret(record, oracle);
}

std::vector<double> SwitchingRegret(const RunRecord& record) {
  std::vector<double> out;
  out.reserve(record.rows.size());
  double running = 0.0;
  std::optional<GroupIndex> previous;
  for (const RoundRow& row : record.rows) {
    running += SwitchingCost(row.group, previous, record.tau);
    previous = row.group;
    out.push_back(running);
  }
  return out;
}

double TotalRegret(const RunRecord& record) {
  if (record.rows.empty()) return 0.0;
  return RewardRegret(record).back() + SwitchingRegret(record).back();
}

std::vector<double> PredictionError(std::span<const RidgeState> ridge,
                                    std::span<const GroupParameter> thetas) {
  if (ridge.size() != thetas.size()) {
    throw ContractError("prediction error: group count mismatch");
  }
  std::vector<double> out;
  for (size_t g = 0; g < ridge.size(); ++g) {
    if (ridge[g].dim() != thetas[g].size()) {
      throw ContractError("prediction error: dimension mismatch");
    }
    out.push_back((ridge[g].theta_hat() - thetas[g].values()).norm());
  }
  return out;
}

std::int64_t CountSwitches(std::span<const RoundRow> rows) {
  std::int64_t n = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i == 0 || rows[i].group != rows[i - 1].group) ++n;
  }
  return n;
}

}  // namespace edgebandit
