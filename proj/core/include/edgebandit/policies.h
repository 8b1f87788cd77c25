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

#ifndef EDGEBANDIT_POLICIES_H_
#define EDGEBANDIT_POLICIES_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "edgebandit/model.h"
#include "edgebandit/rng.h"

namespace edgebandit {

struct PolicyConfig {
  double eta = 1.0;
  double beta = 0.1;
  double lambda = 1.0;
  double delta = 0.1;
  double sigma = 0.05;
  // Dimension used in the confidence radius. Unset means "feature dimension
  // of the group being scored".
  std::optional<int> d;
  int block_length = 1;
  double tau = 1.0;

  // Throws ContractError naming every violated bound.
  void Validate() const;
};

struct Schedule {
  double beta = 0.0;
  double eta = 0.0;
  int block_length = 1;
};

// beta = T^{-1/4} sqrt(ln T), eta = T^{1/6}, B = max(1, round(T^{2/3})).
// beta is clamped to 0.999 (with a warning) should the formula reach 1.
Schedule TheoremSchedule(std::int64_t horizon);

// sqrt(lambda) + sigma * sqrt(d * ln((1 + t / lambda) / delta)).
double AlphaT(std::int64_t t, double lambda, double sigma, int d, double delta);

// Online ridge regression for one group: V = lambda I + sum x x^T,
// b = sum r x, theta_hat = V^{-1} b (solved afresh after every update).
class RidgeState {
 public:
  RidgeState(int dim, double lambda);

  void Update(const FeatureVector& x, double reward);

  double Predict(const FeatureVector& x) const;
  // sqrt(x^T V^{-1} x).
  double Width(const FeatureVector& x) const;
  double Ucb(const FeatureVector& x, double alpha) const {
    return Predict(x) + alpha * Width(x);
  }
  // ||V theta_hat - b||.
  double Residual() const;

  int dim() const { return static_cast<int>(b_.size()); }
  const Eigen::MatrixXd& V() const { return v_; }
  const Eigen::VectorXd& b() const { return b_; }
  const Eigen::VectorXd& theta_hat() const { return theta_hat_; }
  std::int64_t update_count() const { return update_count_; }

 private:
  Eigen::MatrixXd v_;
  Eigen::VectorXd b_;
  Eigen::VectorXd theta_hat_;
  Eigen::MatrixXd v_inverse_;  // refactored from V after every update
  std::int64_t update_count_ = 0;
};

// Exponential-weights side of the blocked learner.
struct Exp3State {
  std::vector<double> cumulative;    // R_g
  std::vector<double> distribution;  // P(g) of the current block
  int block_length = 1;
  std::int64_t block_index = 0;
  std::optional<GroupIndex> current_group;

  Exp3State(int num_groups, int block_length);
};

// R_g += reward / (prob * B) for the played group only.
void UpdateCumulativeEstimates(Exp3State& state, GroupIndex group,
                               double reward, double prob);

// (1 - beta) softmax(eta R) + beta / G, stabilized by subtracting max R.
std::vector<double> SamplingDistribution(std::span<const double> estimates,
                                         double eta, double beta);

struct PolicyDecision {
  GroupIndex group = 0;
  int arm_id = 0;
  FeatureVector arm;
};

// What a policy sees at the start of a round.
struct RoundContext {
  std::int64_t t = 1;
  std::span<const ArmSet> groups;
  const Arm* local_arm = nullptr;
};

// UCB argmax within one group; ties go to the lowest arm id.
const Arm& SelectUcbArm(const RidgeState& ridge, const ArmSet& arms,
                        double alpha);

class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string_view name() const = 0;
  virtual PolicyDecision Choose(const RoundContext& ctx, CounterRng& rng) = 0;
  virtual void Update(const PolicyDecision& decision, double reward) = 0;

  // Group distribution the last decision was drawn from. Deterministic
  // policies report a one-hot vector; the local baseline reports zeros.
  virtual std::vector<double> LastDistribution() const = 0;

  // Per-group ridge states, or empty for policies that do not learn arms.
  virtual std::span<const RidgeState> ridge_states() const { return {}; }
};

// Blocked EXP3 over groups plus per-group LinUCB over arms. With
// block_length = 1 this is the unblocked EXPUCB variant.
class BlockedExpUcb : public Policy {
 public:
  BlockedExpUcb(const PolicyConfig& config, std::span<const int> dims);

  std::string_view name() const override;
  PolicyDecision Choose(const RoundContext& ctx, CounterRng& rng) override;
  void Update(const PolicyDecision& decision, double reward) override;
  std::vector<double> LastDistribution() const override {
    return exp3_.distribution;
  }
  std::span<const RidgeState> ridge_states() const override { return ridge_; }

  const Exp3State& exp3_state() const { return exp3_; }
  const PolicyConfig& config() const { return config_; }

 private:
  PolicyConfig config_;
  Exp3State exp3_;
  std::vector<RidgeState> ridge_;
  std::int64_t round_ = 0;
};

// Picks the global UCB maximizer over every (group, arm) pair. Attacks are
// invisible to it except that zero rewards skip the ridge update.
class GroupLinUcb : public Policy {
 public:
  GroupLinUcb(const PolicyConfig& config, std::span<const int> dims);

  std::string_view name() const override { return "linucb"; }
  PolicyDecision Choose(const RoundContext& ctx, CounterRng& rng) override;
  void Update(const PolicyDecision& decision, double reward) override;
  std::vector<double> LastDistribution() const override { return last_; }
  std::span<const RidgeState> ridge_states() const override { return ridge_; }

 private:
  PolicyConfig config_;
  std::vector<RidgeState> ridge_;
  std::vector<double> last_;
};

// EXP3 over groups, always playing a designated arm (full offload).
class Exp3FixedArm : public Policy {
 public:
  Exp3FixedArm(const PolicyConfig& config, int num_groups,
               int designated_arm_id);

  std::string_view name() const override { return "exp3"; }
  PolicyDecision Choose(const RoundContext& ctx, CounterRng& rng) override;
  void Update(const PolicyDecision& decision, double reward) override;
  std::vector<double> LastDistribution() const override {
    return exp3_.distribution;
  }

 private:
  PolicyConfig config_;
  Exp3State exp3_;
  int designated_arm_id_;
};

// Keeps every task on the device. Stateless.
class LocalPolicy : public Policy {
 public:
  explicit LocalPolicy(int num_groups) : num_groups_(num_groups) {}

  std::string_view name() const override { return "local"; }
  PolicyDecision Choose(const RoundContext& ctx, CounterRng& rng) override;
  void Update(const PolicyDecision&, double) override {}
  std::vector<double> LastDistribution() const override {
    return std::vector<double>(num_groups_, 0.0);
  }

 private:
  int num_groups_;
};

// Uniformly random group, LinUCB arm within it.
class LinUcbRandom : public Policy {
 public:
  LinUcbRandom(const PolicyConfig& config, std::span<const int> dims);

  std::string_view name() const override { return "linucb-random"; }
  PolicyDecision Choose(const RoundContext& ctx, CounterRng& rng) override;
  void Update(const PolicyDecision& decision, double reward) override;
  std::vector<double> LastDistribution() const override;
  std::span<const RidgeState> ridge_states() const override { return ridge_; }

 private:
  PolicyConfig config_;
  std::vector<RidgeState> ridge_;
};

// Full-information benchmark: a fixed group chosen in hindsight, optimal arm
// every round.
class OraclePolicy : public Policy {
 public:
  OraclePolicy(GroupIndex group, std::vector<GroupParameter> thetas);

  std::string_view name() const override { return "oracle"; }
  PolicyDecision Choose(const RoundContext& ctx, CounterRng& rng) override;
  void Update(const PolicyDecision&, double) override {}
  std::vector<double> LastDistribution() const override;

  GroupIndex group() const { return group_; }

 private:
  GroupIndex group_;
  std::vector<GroupParameter> thetas_;
};

enum class PolicyKind {
  kBExpUcb,
  kExpUcb,
  kLinUcb,
  kExp3,
  kLocal,
  kLinUcbRandom,
  kOracle,
};

std::string_view PolicyKindName(PolicyKind kind);
// Throws ConfigError for unknown names.
PolicyKind ParsePolicyKind(std::string_view name);
std::span<const PolicyKind> AllPolicyKinds();

}  // namespace edgebandit

#endif  // EDGEBANDIT_POLICIES_H_
