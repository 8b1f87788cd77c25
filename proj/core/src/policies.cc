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

#include "edgebandit/policies.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include <spdlog/spdlog.h>

#include "edgebandit/errors.h"

namespace edgebandit {
namespace {

void CheckGroups(const RoundContext& ctx, size_t expected) {
  if (ctx.groups.size() != expected) {
    throw ContractError("policy: expected " + std::to_string(expected) +
                        " arm sets, got " + std::to_string(ctx.groups.size()));
  }
}

std::vector<double> OneHot(int size, GroupIndex g) {
  std::vector<double> p(size, 0.0);
  if (g >= 0 && g < size) p[g] = 1.0;
  return p;
}

std::vector<RidgeState> MakeRidges(std::span<const int> dims, double lambda) {
  std::vector<RidgeState> out;
  out.reserve(dims.size());
  for (int d : dims) out.emplace_back(d, lambda);
  return out;
}

double GroupAlpha(const PolicyConfig& cfg, std::int64_t t, int dim) {
  return AlphaT(t, cfg.lambda, cfg.sigma, cfg.d.value_or(dim), cfg.delta);
}

PolicyDecision DecisionFor(GroupIndex g, const Arm& arm) {
  return PolicyDecision{g, arm.id, arm.x};
}

}  // namespace

void PolicyConfig::Validate() const {
  std::vector<std::string> problems;
  if (!(eta > 0.0) || !std::isfinite(eta)) problems.push_back("eta must be > 0");
  if (!(beta >= 0.0 && beta <= 1.0)) problems.push_back("beta must lie in [0, 1]");
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) {
    problems.push_back("lambda must be >= 1");
  }
  if (!(delta > 0.0 && delta < 1.0)) problems.push_back("delta must lie in (0, 1)");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) problems.push_back("sigma must be >= 0");
  if (d.has_value() && *d < 1) problems.push_back("d must be >= 1");
  if (block_length < 1) problems.push_back("block_length must be >= 1");
  if (!(tau >= 0.0) || !std::isfinite(tau)) problems.push_back("tau must be >= 0");
  if (problems.empty()) return;
  std::string msg = "policy config: " + problems.front();
  for (size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i];
  throw ContractError(msg);
}

Schedule TheoremSchedule(std::int64_t horizon) {
  if (horizon < 1) throw ContractError("theorem schedule: horizon must be >= 1");
  const double t = static_cast<double>(horizon);
  Schedule s;
  s.beta = std::pow(t, -0.25) * std::sqrt(std::log(t));
  if (s.beta > 0.999) {
    spdlog::warn("theorem schedule: beta {:.4f} clamped to 0.999 for T={}",
                 s.beta, horizon);
    s.beta = 0.999;
  }
  s.eta = std::pow(t, 1.0 / 6.0);
  s.block_length =
      std::max(1, static_cast<int>(std::llround(std::pow(t, 2.0 / 3.0))));
  return s;
}

double AlphaT(std::int64_t t, double lambda, double sigma, int d, double delta) {
  if (t < 0) throw ContractError("alpha: round must be >= 0");
  return std::sqrt(lambda) +
         sigma * std::sqrt(d * std::log((1.0 + t / lambda) / delta));
}

RidgeState::RidgeState(int dim, double lambda)
    : v_(Eigen::MatrixXd::Identity(dim, dim) * lambda),
      b_(Eigen::VectorXd::Zero(dim)),
      theta_hat_(Eigen::VectorXd::Zero(dim)),
      v_inverse_(Eigen::MatrixXd::Identity(dim, dim) / lambda) {
  if (dim < 1) throw ContractError("ridge: dimension must be >= 1");
  if (!(lambda > 0.0)) throw ContractError("ridge: lambda must be > 0");
}

void RidgeState::Update(const FeatureVector& x, double reward) {
  if (x.size() != dim()) throw ContractError("ridge: feature dimension mismatch");
  v_.noalias() += x.values() * x.values().transpose();
  b_.noalias() += reward * x.values();
  Eigen::LDLT<Eigen::MatrixXd> factor(v_);
  theta_hat_ = factor.solve(b_);
  v_inverse_ = factor.solve(Eigen::MatrixXd::Identity(dim(), dim()));
  ++update_count_;
}

double RidgeState::Predict(const FeatureVector& x) const {
  if (x.size() != dim()) throw ContractError("ridge: feature dimension mismatch");
  return theta_hat_.dot(x.values());
}

double RidgeState::Width(const FeatureVector& x) const {
  if (x.size() != dim()) throw ContractError("ridge: feature dimension mismatch");
  const double q = x.values().dot(v_inverse_ * x.values());
  return std::sqrt(std::max(0.0, q));
}

double RidgeState::Residual() const { return (v_ * theta_hat_ - b_).norm(); }

Exp3State::Exp3State(int num_groups, int block_length)
    : cumulative(num_groups, 0.0),
      distribution(num_groups, num_groups > 0 ? 1.0 / num_groups : 0.0),
      block_length(block_length) {
  if (num_groups < 1) throw ContractError("exp3: need at least one group");
  if (block_length < 1) throw ContractError("exp3: block length must be >= 1");
}

void UpdateCumulativeEstimates(Exp3State& state, GroupIndex group,
                               double reward, double prob) {
  if (group < 0 || group >= static_cast<int>(state.cumulative.size())) {
    throw ContractError("exp3: group out of range");
  }
  if (!(prob > 0.0)) throw ContractError("exp3: sampling probability must be > 0");
  state.cumulative[group] += reward / (prob * state.block_length);
}

std::vector<double> SamplingDistribution(std::span<const double> estimates,
                                         double eta, double beta) {
  if (estimates.empty()) throw ContractError("sampling: no groups");
  if (!(eta > 0.0)) throw ContractError("sampling: eta must be > 0");
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw ContractError("sampling: beta must lie in [0, 1]");
  }
  double top = estimates.front();
  for (double r : estimates) {
    if (!std::isfinite(r)) throw ContractError("sampling: non-finite estimate");
    top = std::max(top, r);
  }
  const double g = static_cast<double>(estimates.size());
  std::vector<double> p(estimates.size());
  double total = 0.0;
  for (size_t i = 0; i < estimates.size(); ++i) {
    p[i] = std::exp(eta * (estimates[i] - top));
    total += p[i];
  }
  for (double& v : p) v = (1.0 - beta) * v / total + beta / g;
  return p;
}

const Arm& SelectUcbArm(const RidgeState& ridge, const ArmSet& arms,
                        double alpha) {
  const Arm* best = nullptr;
  double best_score = 0.0;
  for (const Arm& a : arms.arms()) {
    const double s = ridge.Ucb(a.x, alpha);
    if (best == nullptr || s > best_score ||
        (s == best_score && a.id < best->id)) {
      best = &a;
      best_score = s;
    }
  }
  return *best;
}

BlockedExpUcb::BlockedExpUcb(const PolicyConfig& config,
                             std::span<const int> dims)
    : config_(config),
      exp3_(static_cast<int>(dims.size()), config.block_length),
      ridge_(MakeRidges(dims, config.lambda)) {
  config_.Validate();
}

std::string_view BlockedExpUcb::name() const {
  return config_.block_length == 1 ? "expucb" : "b-expucb";
}

PolicyDecision BlockedExpUcb::Choose(const RoundContext& ctx, CounterRng& rng) {
  CheckGroups(ctx, ridge_.size());
  if (ctx.t < 1) throw ContractError("policy: rounds start at 1");
  round_ = ctx.t;
  if ((ctx.t - 1) % exp3_.block_length == 0 || !exp3_.current_group) {
    exp3_.distribution =
        SamplingDistribution(exp3_.cumulative, config_.eta, config_.beta);
    exp3_.current_group = rng.Categorical(exp3_.distribution);
    ++exp3_.block_index;
  }
  const GroupIndex g = *exp3_.current_group;
  const double alpha = GroupAlpha(config_, ctx.t, ridge_[g].dim());
  return DecisionFor(g, SelectUcbArm(ridge_[g], ctx.groups[g], alpha));
}

void BlockedExpUcb::Update(const PolicyDecision& decision, double reward) {
  const GroupIndex g = decision.group;
  if (reward > 0.0) ridge_.at(g).Update(decision.arm, reward);
  UpdateCumulativeEstimates(exp3_, g, reward, exp3_.distribution.at(g));
}

GroupLinUcb::GroupLinUcb(const PolicyConfig& config, std::span<const int> dims)
    : config_(config),
      ridge_(MakeRidges(dims, config.lambda)),
      last_(dims.size(), 0.0) {
  config_.Validate();
}

PolicyDecision GroupLinUcb::Choose(const RoundContext& ctx, CounterRng&) {
  CheckGroups(ctx, ridge_.size());
  GroupIndex best_group = -1;
  const Arm* best = nullptr;
  double best_score = 0.0;
  for (GroupIndex g = 0; g < static_cast<int>(ridge_.size()); ++g) {
    const double alpha = GroupAlpha(config_, ctx.t, ridge_[g].dim());
    for (const Arm& a : ctx.groups[g].arms()) {
      const double s = ridge_[g].Ucb(a.x, alpha);
      const bool better =
          best == nullptr || s > best_score ||
          (s == best_score && g == best_group && a.id < best->id);
      if (better) {
        best_group = g;
        best = &a;
        best_score = s;
      }
    }
  }
  last_ = OneHot(static_cast<int>(ridge_.size()), best_group);
  return DecisionFor(best_group, *best);
}

void GroupLinUcb::Update(const PolicyDecision& decision, double reward) {
  if (reward > 0.0) ridge_.at(decision.group).Update(decision.arm, reward);
}

Exp3FixedArm::Exp3FixedArm(const PolicyConfig& config, int num_groups,
                           int designated_arm_id)
    : config_(config),
      exp3_(num_groups, 1),
      designated_arm_id_(designated_arm_id) {
  config_.Validate();
}

PolicyDecision Exp3FixedArm::Choose(const RoundContext& ctx, CounterRng& rng) {
  CheckGroups(ctx, exp3_.cumulative.size());
  exp3_.distribution =
      SamplingDistribution(exp3_.cumulative, config_.eta, config_.beta);
  const GroupIndex g = rng.Categorical(exp3_.distribution);
  exp3_.current_group = g;
  ++exp3_.block_index;
  const Arm* arm = ctx.groups[g].Find(designated_arm_id_);
  if (arm == nullptr) {
    throw ConfigError("exp3: designated arm " +
                      std::to_string(designated_arm_id_) +
                      " missing from group " + std::to_string(g + 1));
  }
  return DecisionFor(g, *arm);
}

void Exp3FixedArm::Update(const PolicyDecision& decision, double reward) {
  UpdateCumulativeEstimates(exp3_, decision.group, reward,
                            exp3_.distribution.at(decision.group));
}

PolicyDecision LocalPolicy::Choose(const RoundContext& ctx, CounterRng&) {
  if (ctx.local_arm == nullptr) {
    throw ConfigError("local: environment offers no on-device arm");
  }
  return DecisionFor(kLocalGroup, *ctx.local_arm);
}

LinUcbRandom::LinUcbRandom(const PolicyConfig& config,
                           std::span<const int> dims)
    : config_(config), ridge_(MakeRidges(dims, config.lambda)) {
  config_.Validate();
}

PolicyDecision LinUcbRandom::Choose(const RoundContext& ctx, CounterRng& rng) {
  CheckGroups(ctx, ridge_.size());
  const std::vector<double> uniform = LastDistribution();
  const GroupIndex g = rng.Categorical(uniform);
  const double alpha = GroupAlpha(config_, ctx.t, ridge_[g].dim());
  return DecisionFor(g, SelectUcbArm(ridge_[g], ctx.groups[g], alpha));
}

void LinUcbRandom::Update(const PolicyDecision& decision, double reward) {
  if (reward > 0.0) ridge_.at(decision.group).Update(decision.arm, reward);
}

std::vector<double> LinUcbRandom::LastDistribution() const {
  const int g = static_cast<int>(ridge_.size());
  return std::vector<double>(g, 1.0 / g);
}

OraclePolicy::OraclePolicy(GroupIndex group, std::vector<GroupParameter> thetas)
    : group_(group), thetas_(std::move(thetas)) {
  if (group_ < 0 || group_ >= static_cast<int>(thetas_.size())) {
    throw ContractError("oracle: group out of range");
  }
}

PolicyDecision OraclePolicy::Choose(const RoundContext& ctx, CounterRng&) {
  CheckGroups(ctx, thetas_.size());
  return DecisionFor(group_, OptimalArm(thetas_[group_], ctx.groups[group_]));
}

std::vector<double> OraclePolicy::LastDistribution() const {
  return OneHot(static_cast<int>(thetas_.size()), group_);
}

namespace {

constexpr std::array<std::pair<PolicyKind, std::string_view>, 7> kPolicyNames{{
    {PolicyKind::kBExpUcb, "b-expucb"},
    {PolicyKind::kExpUcb, "expucb"},
    {PolicyKind::kLinUcb, "linucb"},
    {PolicyKind::kExp3, "exp3"},
    {PolicyKind::kLocal, "local"},
    {PolicyKind::kLinUcbRandom, "linucb-random"},
    {PolicyKind::kOracle, "oracle"},
}};

constexpr std::array<PolicyKind, 7> kAllKinds{
    PolicyKind::kOracle, PolicyKind::kExpUcb,       PolicyKind::kBExpUcb,
    PolicyKind::kLinUcb, PolicyKind::kExp3,         PolicyKind::kLocal,
    PolicyKind::kLinUcbRandom};

}  // namespace

std::string_view PolicyKindName(PolicyKind kind) {
  for (const auto& [k, name] : kPolicyNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

PolicyKind ParsePolicyKind(std::string_view name) {
  for (const auto& [k, n] : kPolicyNames) {
    if (n == name) return k;
  }
  std::string known;
  for (const auto& [k, n] : kPolicyNames) {
    if (!known.empty()) known += ", ";
    known += n;
  }
  throw ConfigError("unknown policy '" + std::string(name) +
                    "' (known: " + known + ")");
}

std::span<const PolicyKind> AllPolicyKinds() { return kAllKinds; }

}  // namespace edgebandit
