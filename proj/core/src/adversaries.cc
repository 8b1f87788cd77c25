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

#include "edgebandit/adversaries.h"

#include <cmath>
#include <string>
#include <utility>

#include "edgebandit/errors.h"

namespace edgebandit {
namespace {

std::vector<std::vector<double>> Alternating(std::vector<double> odd,
                                             std::vector<double> even) {
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < odd.size(); ++i) rows.push_back(i % 2 == 0 ? odd : even);
  return rows;
}

}  // namespace

std::vector<std::string> ValidateMatrix(
    const std::vector<std::vector<double>>& rows) {
  std::vector<std::string> problems;
  if (rows.empty()) {
    problems.push_back("attack matrix: no rows");
    return problems;
  }
  const size_t n = rows.size();
  for (size_t i = 0; i < n; ++i) {
    const std::string where = "attack matrix row " + std::to_string(i + 1);
    if (rows[i].size() != n) {
      problems.push_back(where + ": has " + std::to_string(rows[i].size()) +
                         " entries, expected " + std::to_string(n));
      continue;
    }
    double total = 0.0;
    bool entries_ok = true;
    for (size_t j = 0; j < n; ++j) {
      const double p = rows[i][j];
      if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        problems.push_back(where + ", column " + std::to_string(j + 1) +
                           ": probability outside [0, 1]");
        entries_ok = false;
      }
      total += p;
    }
    if (entries_ok && std::abs(total - 1.0) > 1e-9) {
      problems.push_back(where + ": sums to " + std::to_string(total) +
                         ", expected 1");
    }
  }
  return problems;
}

MarkovAttackMatrix::MarkovAttackMatrix(std::vector<std::vector<double>> rows)
    : rows_(std::move(rows)) {
  std::vector<std::string> problems = ValidateMatrix(rows_);
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

const std::vector<double>& MarkovAttackMatrix::row(GroupIndex i) const {
  if (i < 0 || i >= size()) throw ContractError("attack matrix: row out of range");
  return rows_[i];
}

MarkovAttackMatrix DefaultObliviousMatrix() {
  return MarkovAttackMatrix(
      Alternating({0.4, 0.1, 0.4, 0.1}, {0.35, 0.15, 0.35, 0.15}));
}

MarkovAttackMatrix ShiftBeforeMatrix() {
  return MarkovAttackMatrix(
      Alternating({0.2, 0.3, 0.2, 0.3}, {0.15, 0.35, 0.15, 0.35}));
}

MarkovAttackMatrix ShiftAfterMatrix() {
  return MarkovAttackMatrix(
      Alternating({0.35, 0.15, 0.45, 0.05}, {0.3, 0.2, 0.4, 0.1}));
}

AttackerSpec AttackerSpec::None() { return AttackerSpec{}; }

AttackerSpec AttackerSpec::Oblivious(MarkovAttackMatrix m, GroupIndex initial) {
  AttackerSpec s;
  s.kind = Kind::kObliviousMarkov;
  s.matrix = std::move(m);
  s.initial_attacked = initial;
  return s;
}

AttackerSpec AttackerSpec::Adaptive() {
  AttackerSpec s;
  s.kind = Kind::kAdaptive;
  return s;
}

AttackerSpec AttackerSpec::TimeVarying(MarkovAttackMatrix before,
                                       MarkovAttackMatrix after,
                                       std::int64_t switch_round,
                                       GroupIndex initial) {
  AttackerSpec s;
  s.kind = Kind::kTimeVarying;
  s.matrix = std::move(before);
  s.matrix_after = std::move(after);
  s.switch_round = switch_round;
  s.initial_attacked = initial;
  return s;
}

std::vector<std::string> AttackerSpec::Validate(int num_groups) const {
  std::vector<std::string> problems;
  auto check = [&](const std::optional<MarkovAttackMatrix>& m,
                   const char* label) {
    if (!m) {
      problems.push_back(std::string("attacker: missing ") + label + " matrix");
    } else if (m->size() != num_groups) {
      problems.push_back(std::string("attacker: ") + label + " matrix is " +
                         std::to_string(m->size()) + "x" +
                         std::to_string(m->size()) + " but there are " +
                         std::to_string(num_groups) + " groups");
    }
  };
  if (kind == Kind::kObliviousMarkov || kind == Kind::kTimeVarying) {
    check(matrix, kind == Kind::kTimeVarying ? "before" : "transition");
    if (initial_attacked < 0 || initial_attacked >= num_groups) {
      problems.push_back("attacker: initial attacked group out of range");
    }
  }
  if (kind == Kind::kTimeVarying) {
    check(matrix_after, "after");
    if (switch_round < 1) problems.push_back("attacker: switch round must be >= 1");
  }
  return problems;
}

std::string AttackerKindName(AttackerSpec::Kind kind) {
  switch (kind) {
    case AttackerSpec::Kind::kNone:
      return "none";
    case AttackerSpec::Kind::kObliviousMarkov:
      return "oblivious";
    case AttackerSpec::Kind::kAdaptive:
      return "adaptive";
    case AttackerSpec::Kind::kTimeVarying:
      return "shift";
  }
  return "unknown";
}

AttackVector AttackStep(const AttackerSpec& spec, int num_groups,
                        std::int64_t t, std::optional<GroupIndex> last_attacked,
                        std::optional<GroupIndex> last_learner_group,
                        CounterRng& rng) {
  switch (spec.kind) {
    case AttackerSpec::Kind::kNone:
      return AttackVector::NoAttack(num_groups);
    case AttackerSpec::Kind::kObliviousMarkov:
    case AttackerSpec::Kind::kTimeVarying: {
      const bool after = spec.kind == AttackerSpec::Kind::kTimeVarying &&
                         t >= spec.switch_round;
      const MarkovAttackMatrix& m = after ? *spec.matrix_after : *spec.matrix;
      const GroupIndex prev = last_attacked.value_or(spec.initial_attacked);
      return AttackVector::Attacking(num_groups, rng.Categorical(m.row(prev)));
    }
    case AttackerSpec::Kind::kAdaptive: {
      GroupIndex target = 0;
      if (last_learner_group && *last_learner_group != kLocalGroup) {
        target = *last_learner_group;
      } else if (last_attacked) {
        target = *last_attacked;
      }
      return AttackVector::Attacking(num_groups, target);
    }
  }
  throw ContractError("attacker: unknown kind");
}

Attacker::Attacker(AttackerSpec spec, int num_groups)
    : spec_(std::move(spec)), num_groups_(num_groups) {
  std::vector<std::string> problems = spec_.Validate(num_groups_);
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

AttackVector Attacker::Step(std::int64_t t,
                            std::optional<GroupIndex> last_learner_group,
                            CounterRng& rng) {
  AttackVector a = AttackStep(spec_, num_groups_, t, last_attacked_,
                              last_learner_group, rng);
  for (GroupIndex g = 0; g < a.size(); ++g) {
    if (a.attacked(g)) last_attacked_ = g;
  }
  return a;
}

}  // namespace edgebandit
