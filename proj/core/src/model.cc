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

#include "edgebandit/model.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "edgebandit/errors.h"

namespace edgebandit {
namespace {

void CheckFinite(const Eigen::VectorXd& v, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw ContractError(std::string(what) + ": non-finite component at " +
                          std::to_string(i));
    }
  }
}

Eigen::VectorXd FromList(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

}  // namespace

FeatureVector::FeatureVector(Eigen::VectorXd values)
    : values_(std::move(values)) {
  CheckFinite(values_, "feature vector");
  if (values_.norm() > 1.0 + kNormSlack) {
    throw ContractError("feature vector: norm " +
                        std::to_string(values_.norm()) + " exceeds 1");
  }
}

FeatureVector::FeatureVector(std::initializer_list<double> values)
    : FeatureVector(FromList(values)) {}

GroupParameter::GroupParameter(Eigen::VectorXd values)
    : values_(std::move(values)) {
  CheckFinite(values_, "group parameter");
}

GroupParameter::GroupParameter(std::initializer_list<double> values)
    : GroupParameter(FromList(values)) {}

double Dot(const GroupParameter& theta, const FeatureVector& arm) {
  if (theta.size() != arm.size()) {
    throw ContractError("dimension mismatch: parameter " +
                        std::to_string(theta.size()) + " vs arm " +
                        std::to_string(arm.size()));
  }
  return theta.values().dot(arm.values());
}

ArmSet::ArmSet(GroupIndex group, std::vector<Arm> arms)
    : group_(group), arms_(std::move(arms)) {
  if (arms_.empty()) throw ContractError("arm set: empty");
  std::set<int> ids;
  for (const Arm& a : arms_) {
    if (!ids.insert(a.id).second) {
      throw ContractError("arm set: duplicate arm id " + std::to_string(a.id));
    }
    if (a.x.size() != arms_.front().x.size()) {
      throw ContractError("arm set: mixed feature dimensions");
    }
  }
}

const Arm* ArmSet::Find(int arm_id) const {
  for (const Arm& a : arms_) {
    if (a.id == arm_id) return &a;
  }
  return nullptr;
}

AttackVector::AttackVector(std::vector<std::uint8_t> flags)
    : flags_(std::move(flags)) {
  for (std::uint8_t f : flags_) {
    if (f > 1) throw ContractError("attack vector: flags must be 0 or 1");
  }
}

AttackVector AttackVector::NoAttack(int num_groups) {
  return AttackVector(std::vector<std::uint8_t>(num_groups, 1));
}

AttackVector AttackVector::Attacking(int num_groups, GroupIndex attacked) {
  if (attacked < 0 || attacked >= num_groups) {
    throw ContractError("attack vector: group out of range");
  }
  std::vector<std::uint8_t> flags(num_groups, 1);
  flags[attacked] = 0;
  return AttackVector(std::move(flags));
}

int AttackVector::flag(GroupIndex g) const {
  if (g < 0 || g >= size()) {
    throw ContractError("attack vector: group " + std::to_string(g) +
                        " out of range");
  }
  return flags_[g];
}

NoiseSpec NoiseSpec::None(double sigma_param) {
  NoiseSpec s;
  s.sigma_param = sigma_param;
  return s;
}

NoiseSpec NoiseSpec::Uniform(double lo, double hi) {
  NoiseSpec s;
  s.kind = Kind::kUniform;
  s.lo = lo;
  s.hi = hi;
  s.sigma_param = (hi - lo) / 2.0;
  return s;
}

NoiseSpec NoiseSpec::Gaussian(double sigma) {
  NoiseSpec s;
  s.kind = Kind::kGaussian;
  s.sigma = sigma;
  s.sigma_param = sigma;
  return s;
}

double NoiseSpec::Amplitude() const {
  switch (kind) {
    case Kind::kNone:
      return 0.0;
    case Kind::kUniform:
      return std::max(std::abs(lo), std::abs(hi));
    case Kind::kGaussian:
      return 5.0 * sigma;
  }
  return 0.0;
}

void NoiseSpec::Validate() const {
  if (!std::isfinite(sigma_param) || sigma_param < 0.0) {
    throw ContractError("noise: sigma parameter must be finite and >= 0");
  }
  if (kind == Kind::kUniform &&
      (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)) {
    throw ContractError("noise: uniform bounds must be finite with lo <= hi");
  }
  if (kind == Kind::kGaussian && (!std::isfinite(sigma) || sigma < 0.0)) {
    throw ContractError("noise: gaussian sigma must be finite and >= 0");
  }
}

double DrawNoise(CounterRng& rng, const NoiseSpec& spec) {
  switch (spec.kind) {
    case NoiseSpec::Kind::kNone:
      return 0.0;
    case NoiseSpec::Kind::kUniform:
      return rng.Uniform(spec.lo, spec.hi);
    case NoiseSpec::Kind::kGaussian:
      return rng.Gaussian(spec.sigma);
  }
  return 0.0;
}

double RealizeReward(GroupIndex group, const FeatureVector& arm,
                     const GroupParameter& theta, const AttackVector& attack,
                     double noise) {
  return attack.flag(group) * (Dot(theta, arm) + noise);
}

const Arm& OptimalArm(const GroupParameter& theta, const ArmSet& arms) {
  const Arm* best = nullptr;
  double best_value = 0.0;
  for (const Arm& a : arms.arms()) {
    const double v = Dot(theta, a.x);
    if (best == nullptr || v > best_value ||
        (v == best_value && a.id < best->id)) {
      best = &a;
      best_value = v;
    }
  }
  return *best;
}

GroupIndex OracleGroup(
    std::span<const AttackVector> attacks,
    std::span<const GroupParameter> thetas,
    const std::function<const ArmSet&(std::int64_t t, GroupIndex g)>& armsets) {
  const int num_groups = static_cast<int>(thetas.size());
  std::vector<std::vector<double>> values;
  values.reserve(attacks.size());
  for (size_t i = 0; i < attacks.size(); ++i) {
    const std::int64_t t = static_cast<std::int64_t>(i) + 1;
    std::vector<double> row(num_groups);
    for (GroupIndex g = 0; g < num_groups; ++g) {
      const ArmSet& arms = armsets(t, g);
      row[g] = Dot(thetas[g], OptimalArm(thetas[g], arms).x);
    }
    values.push_back(std::move(row));
  }
  return OracleGroupFromValues(attacks, values);
}

GroupIndex OracleGroupFromValues(
    std::span<const AttackVector> attacks,
    std::span<const std::vector<double>> optimal_values) {
  if (attacks.size() != optimal_values.size()) {
    throw ContractError("oracle: attack and value sequences differ in length");
  }
  if (attacks.empty()) throw ContractError("oracle: empty horizon");
  const int num_groups = attacks.front().size();
  std::vector<double> totals(num_groups, 0.0);
  for (size_t t = 0; t < attacks.size(); ++t) {
    if (attacks[t].size() != num_groups ||
        static_cast<int>(optimal_values[t].size()) != num_groups) {
      throw ContractError("oracle: inconsistent group count");
    }
    for (GroupIndex g = 0; g < num_groups; ++g) {
      totals[g] += attacks[t].flag(g) * optimal_values[t][g];
    }
  }
  GroupIndex best = 0;
  for (GroupIndex g = 1; g < num_groups; ++g) {
    if (totals[g] > totals[best]) best = g;
  }
  return best;
}

void History::Append(const HistoryEntry& entry) {
  if (entry.t != size() + 1) {
    throw ContractError("history: round " + std::to_string(entry.t) +
                        " appended after round " + std::to_string(size()));
  }
  entries_.push_back(entry);
}

}  // namespace edgebandit
