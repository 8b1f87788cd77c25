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

#ifndef EDGEBANDIT_MODEL_H_
#define EDGEBANDIT_MODEL_H_

// Group linear bandit primitives: arms, group parameters, attacks, noise and
// the hindsight benchmark shared by every policy and environment.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "edgebandit/rng.h"

namespace edgebandit {

// Groups are 0-based in memory. Anything written for humans (CSV, CLI) adds
// one, so server/path numbering starts at 1.
using GroupIndex = int;

// Decision that bypasses the group structure entirely (the on-device
// baseline). Never attacked, never learned.
inline constexpr GroupIndex kLocalGroup = -1;

inline constexpr double kNormSlack = 1e-9;

// Arm features after scenario normalization. Finite, Euclidean norm <= 1.
class FeatureVector {
 public:
  FeatureVector() = default;
  explicit FeatureVector(Eigen::VectorXd values);
  FeatureVector(std::initializer_list<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }
  const Eigen::VectorXd& values() const { return values_; }
  double norm() const { return values_.norm(); }

 private:
  Eigen::VectorXd values_;
};

// Latent linear parameter of one group. Only finiteness is enforced: the
// edge environment's implied parameter carries the deadline and inverse
// speeds, so its norm is fixed by physics rather than by the learner.
class GroupParameter {
 public:
  GroupParameter() = default;
  explicit GroupParameter(Eigen::VectorXd values);
  GroupParameter(std::initializer_list<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }
  const Eigen::VectorXd& values() const { return values_; }
  double norm() const { return values_.norm(); }

 private:
  Eigen::VectorXd values_;
};

double Dot(const GroupParameter& theta, const FeatureVector& arm);

struct Arm {
  int id = 0;
  FeatureVector x;
};

// Arms available to one group in one round. Non-empty, ids unique.
class ArmSet {
 public:
  ArmSet(GroupIndex group, std::vector<Arm> arms);

  GroupIndex group() const { return group_; }
  const std::vector<Arm>& arms() const { return arms_; }
  int size() const { return static_cast<int>(arms_.size()); }
  // nullptr when the id is not part of the set.
  const Arm* Find(int arm_id) const;

 private:
  GroupIndex group_;
  std::vector<Arm> arms_;
};

// a(g) = 0 marks an attacked group.
class AttackVector {
 public:
  AttackVector() = default;
  explicit AttackVector(std::vector<std::uint8_t> flags);

  static AttackVector NoAttack(int num_groups);
  static AttackVector Attacking(int num_groups, GroupIndex attacked);

  int size() const { return static_cast<int>(flags_.size()); }
  int flag(GroupIndex g) const;
  bool attacked(GroupIndex g) const { return flag(g) == 0; }
  const std::vector<std::uint8_t>& flags() const { return flags_; }

 private:
  std::vector<std::uint8_t> flags_;
};

struct NoiseSpec {
  enum class Kind { kNone, kUniform, kGaussian };

  Kind kind = Kind::kNone;
  double lo = 0.0;
  double hi = 0.0;
  double sigma = 0.0;
  // The sigma plugged into the confidence width. Decoupled from the sampled
  // law; the uniform [-0.05, 0.05] default pairs with 0.05.
  double sigma_param = 0.05;

  static NoiseSpec None(double sigma_param = 0.05);
  static NoiseSpec Uniform(double lo, double hi);
  static NoiseSpec Gaussian(double sigma);

  // Largest |noise| a scenario must tolerate without the reward sign
  // flipping. Gaussian noise is bounded at five standard deviations.
  double Amplitude() const;
  void Validate() const;
};

double DrawNoise(CounterRng& rng, const NoiseSpec& spec);

// a(g) * (theta^T x + noise).
double RealizeReward(GroupIndex group, const FeatureVector& arm,
                     const GroupParameter& theta, const AttackVector& attack,
                     double noise);

// argmax_x theta^T x over the set; ties go to the lowest arm id.
const Arm& OptimalArm(const GroupParameter& theta, const ArmSet& arms);

// Best group-static strategy in hindsight: argmax_g sum_t a^t(g) max_x
// theta_g^T x over X_g^t. Ties go to the lowest group index.
GroupIndex OracleGroup(
    std::span<const AttackVector> attacks,
    std::span<const GroupParameter> thetas,
    const std::function<const ArmSet&(std::int64_t t, GroupIndex g)>& armsets);

// Same benchmark from precomputed per-round optimal values[t][g].
GroupIndex OracleGroupFromValues(
    std::span<const AttackVector> attacks,
    std::span<const std::vector<double>> optimal_values);

struct HistoryEntry {
  std::int64_t t = 0;
  GroupIndex group = 0;
  int arm_id = 0;
  bool attacked = false;
  double reward = 0.0;
};

// Append-only log, one entry per round, rounds numbered from 1.
class History {
 public:
  void Append(const HistoryEntry& entry);
  const std::vector<HistoryEntry>& entries() const { return entries_; }
  std::int64_t size() const { return static_cast<std::int64_t>(entries_.size()); }

 private:
  std::vector<HistoryEntry> entries_;
};

}  // namespace edgebandit

#endif  // EDGEBANDIT_MODEL_H_
