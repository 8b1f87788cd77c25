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

#ifndef EDGEBANDIT_ADVERSARIES_H_
#define EDGEBANDIT_ADVERSARIES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edgebandit/model.h"
#include "edgebandit/rng.h"

namespace edgebandit {

// Row-stochastic G x G matrix; entry (i, j) is the probability of attacking
// group j in a round that follows an attack on group i.
class MarkovAttackMatrix {
 public:
  // Throws ConfigError carrying ValidateMatrix's diagnostics.
  explicit MarkovAttackMatrix(std::vector<std::vector<double>> rows);

  int size() const { return static_cast<int>(rows_.size()); }
  const std::vector<double>& row(GroupIndex i) const;
  const std::vector<std::vector<double>>& rows() const { return rows_; }

 private:
  std::vector<std::vector<double>> rows_;
};

// Empty result means the rows form a valid stochastic matrix. Otherwise one
// diagnostic per offending row or entry.
std::vector<std::string> ValidateMatrix(
    const std::vector<std::vector<double>>& rows);

// Transition matrix of the oblivious attacker used in the main experiments.
MarkovAttackMatrix DefaultObliviousMatrix();
// Before/after matrices of the attacker-shift experiment.
MarkovAttackMatrix ShiftBeforeMatrix();
MarkovAttackMatrix ShiftAfterMatrix();

struct AttackerSpec {
  enum class Kind { kNone, kObliviousMarkov, kAdaptive, kTimeVarying };

  Kind kind = Kind::kNone;
  std::optional<MarkovAttackMatrix> matrix;        // oblivious; time-varying "before"
  std::optional<MarkovAttackMatrix> matrix_after;  // time-varying "after"
  // Chain state before round 1: round 1 is drawn from this group's row.
  GroupIndex initial_attacked = 0;
  std::int64_t switch_round = 1;

  static AttackerSpec None();
  static AttackerSpec Oblivious(MarkovAttackMatrix m, GroupIndex initial = 0);
  static AttackerSpec Adaptive();
  static AttackerSpec TimeVarying(MarkovAttackMatrix before,
                                  MarkovAttackMatrix after,
                                  std::int64_t switch_round,
                                  GroupIndex initial = 0);

  // Diagnostics for a G-group problem; empty when valid.
  std::vector<std::string> Validate(int num_groups) const;
};

std::string AttackerKindName(AttackerSpec::Kind kind);

// One attacker move. Exactly one group is attacked for every kind except
// kNone. Only the adaptive kind reads `last_learner_group`; it attacks group
// 0 in round 1 and afterwards whatever the learner played last (the last
// attacked group is repeated when the learner stayed on-device).
AttackVector AttackStep(const AttackerSpec& spec, int num_groups,
                        std::int64_t t, std::optional<GroupIndex> last_attacked,
                        std::optional<GroupIndex> last_learner_group,
                        CounterRng& rng);

// Stateful wrapper tracking the previously attacked group for one run.
class Attacker {
 public:
  Attacker(AttackerSpec spec, int num_groups);

  AttackVector Step(std::int64_t t,
                    std::optional<GroupIndex> last_learner_group,
                    CounterRng& rng);

  const AttackerSpec& spec() const { return spec_; }

 private:
  AttackerSpec spec_;
  int num_groups_;
  std::optional<GroupIndex> last_attacked_;
};

}  // namespace edgebandit

#endif  // EDGEBANDIT_ADVERSARIES_H_
