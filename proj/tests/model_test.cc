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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "edgebandit/errors.h"
#include "oracles.h"

namespace edgebandit {
namespace {

TEST(FeatureVector, RejectsNonFiniteAndOversizedVectors) {
  EXPECT_THROW(FeatureVector({0.5, NAN}), ContractError);
  EXPECT_THROW(FeatureVector({0.8, 0.7}), ContractError);
  EXPECT_NO_THROW(FeatureVector({0.6, 0.8}));
  EXPECT_THROW(GroupParameter({INFINITY}), ContractError);
}

TEST(RealizeReward, AttackZeroesReward) {
  const GroupParameter theta{0.3, 0.4};
  const FeatureVector x{0.5, 0.5};
  const AttackVector attack = AttackVector::Attacking(2, 1);
  EXPECT_EQ(RealizeReward(1, x, theta, attack, 0.04), 0.0);
  EXPECT_EQ(RealizeReward(1, x, theta, attack, -0.04), 0.0);
}

TEST(RealizeReward, UnitBasisWeight) {
  const AttackVector none = AttackVector::NoAttack(1);
  EXPECT_DOUBLE_EQ(RealizeReward(0, FeatureVector{0.5, 0.3}, GroupParameter{1.0, 0.0},
                                 none, 0.0),
                   0.5);
}

TEST(RealizeReward, HandEvaluatedDotProduct) {
  // 0.8 - 0.10 - 0.04 + 0.01
  const FeatureVector x(Eigen::Vector3d(1.0, 0.5, 0.4) / 1.2);
  const GroupParameter theta(Eigen::Vector3d(0.8, -0.2, -0.1) * 1.2);
  EXPECT_NEAR(RealizeReward(0, x, theta, AttackVector::NoAttack(1), 0.01), 0.67, 1e-12);
}

TEST(RealizeReward, DimensionMismatchIsContractError) {
  EXPECT_THROW(RealizeReward(0, FeatureVector{0.1, 0.2}, GroupParameter{1.0},
                             AttackVector::NoAttack(1), 0.0),
               ContractError);
  EXPECT_THROW(RealizeReward(3, FeatureVector{0.1}, GroupParameter{1.0},
                             AttackVector::NoAttack(2), 0.0),
               ContractError);
}

TEST(RealizeReward, AttackedRoundsAreZeroForRandomArms) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::VectorXd x(4), th(4);
    for (int i = 0; i < 4; ++i) {
      x[i] = n(gen);
      th[i] = n(gen);
    }
    x /= (x.norm() + 1.0);
    EXPECT_EQ(RealizeReward(2, FeatureVector(x), GroupParameter(th),
                            AttackVector::Attacking(3, 2), n(gen)),
              0.0);
  }
}

TEST(RealizeReward, LinearInArmWithoutNoise) {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  const AttackVector ok = AttackVector::NoAttack(1);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Vector3d x, y, th;
    for (int i = 0; i < 3; ++i) {
      x[i] = u(gen);
      y[i] = u(gen);
      th[i] = 3.0 * u(gen);
    }
    const GroupParameter theta(th);
    const double sum = RealizeReward(0, FeatureVector(Eigen::VectorXd(x + y)), theta, ok, 0.0);
    const double parts = RealizeReward(0, FeatureVector(Eigen::VectorXd(x)), theta, ok, 0.0) +
                         RealizeReward(0, FeatureVector(Eigen::VectorXd(y)), theta, ok, 0.0);
    EXPECT_NEAR(sum, parts, 1e-12);
  }
}

TEST(DrawNoise, NoneIsZero) {
  CounterRng rng(1, Stream::kNoise, 1);
  EXPECT_EQ(DrawNoise(rng, NoiseSpec::None()), 0.0);
}

TEST(DrawNoise, UniformMeanAndSupport) {
  constexpr int kN = 100000;
  const NoiseSpec spec = NoiseSpec::Uniform(-0.05, 0.05);
  double sum = 0.0;
  for (int i = 0; i < kN; ++i) {
    CounterRng rng(9, Stream::kNoise, static_cast<std::uint64_t>(i));
    const double e = DrawNoise(rng, spec);
    ASSERT_GE(e, -0.05);
    ASSERT_LE(e, 0.05);
    sum += e;
  }
  // Standard deviation of U(-a, a) is a / sqrt(3).
  EXPECT_LT(std::abs(sum / kN), 3.0 * 0.05 / std::sqrt(3.0 * kN));
}

TEST(NoiseSpec, AmplitudeAndValidation) {
  EXPECT_DOUBLE_EQ(NoiseSpec::Uniform(-0.05, 0.05).Amplitude(), 0.05);
  EXPECT_DOUBLE_EQ(NoiseSpec::Uniform(-0.05, 0.05).sigma_param, 0.05);
  EXPECT_DOUBLE_EQ(NoiseSpec::Gaussian(0.01).Amplitude(), 0.05);
  EXPECT_DOUBLE_EQ(NoiseSpec::None().Amplitude(), 0.0);
  EXPECT_THROW(NoiseSpec::Uniform(0.1, -0.1).Validate(), ContractError);
  EXPECT_THROW(NoiseSpec::None(-1.0).Validate(), ContractError);
}

TEST(ArmSet, RejectsEmptyAndDuplicateIds) {
  EXPECT_THROW(ArmSet(0, {}), ContractError);
  EXPECT_THROW(ArmSet(0, {{1, FeatureVector{0.1}}, {1, FeatureVector{0.2}}}),
               ContractError);
  const ArmSet ok(0, {{3, FeatureVector{0.1}}, {1, FeatureVector{0.2}}});
  ASSERT_NE(ok.Find(1), nullptr);
  EXPECT_EQ(ok.Find(2), nullptr);
}

TEST(OptimalArm, SingleArm) {
  const ArmSet arms(0, {{5, FeatureVector{0.2, 0.1}}});
  EXPECT_EQ(OptimalArm(GroupParameter{-1.0, 2.0}, arms).id, 5);
}

TEST(OptimalArm, ComparesDotProducts) {
  const ArmSet arms(0, {{1, FeatureVector{0.2, 0.9}}, {2, FeatureVector{0.7, 0.1}}});
  EXPECT_EQ(OptimalArm(GroupParameter{1.0, 0.0}, arms).id, 2);
}

TEST(OptimalArm, ZeroParameterPicksLowestId) {
  const ArmSet arms(0, {{7, FeatureVector{0.2, 0.9}},
                        {3, FeatureVector{0.7, 0.1}},
                        {4, FeatureVector{0.1, 0.1}}});
  EXPECT_EQ(OptimalArm(GroupParameter{0.0, 0.0}, arms).id, 3);
}

TEST(OptimalArm, InvariantUnderPositiveScaling) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Arm> arms;
    for (int k = 0; k < 6; ++k) arms.push_back({k, FeatureVector{u(gen), u(gen), u(gen)}});
    const ArmSet set(0, arms);
    const Eigen::Vector3d th(u(gen), u(gen), u(gen));
    const int a = OptimalArm(GroupParameter(Eigen::VectorXd(th)), set).id;
    const int b = OptimalArm(GroupParameter(Eigen::VectorXd(th * scale(gen))), set).id;
    EXPECT_EQ(a, b);
  }
}

std::vector<AttackVector> Attacks(const std::vector<std::vector<std::uint8_t>>& rows) {
  std::vector<AttackVector> out;
  for (const auto& r : rows) out.emplace_back(r);
  return out;
}

TEST(OracleGroup, AlwaysAttackedGroupLoses) {
  const std::vector<GroupParameter> thetas{GroupParameter{1.0}, GroupParameter{1.0}};
  const ArmSet arms(0, {{0, FeatureVector{0.5}}});
  const auto attacks = Attacks({{1, 0}, {1, 0}});
  EXPECT_EQ(OracleGroup(attacks, thetas, [&](std::int64_t, GroupIndex) -> const ArmSet& {
              return arms;
            }),
            0);
}

TEST(OracleGroup, SumsUnattackedOptimalValues) {
  // Per-round optima: group 1 = (1, 1, 0), group 2 = (0.9, 0.9, 0.9).
  const std::vector<std::vector<double>> values{{1.0, 0.9}, {1.0, 0.9}, {0.0, 0.9}};
  const auto attacks = Attacks({{1, 1}, {1, 1}, {1, 1}});
  EXPECT_EQ(OracleGroupFromValues(attacks, values), 1);
}

TEST(OracleGroup, AllAttackedTiesGoToFirstGroup) {
  const std::vector<std::vector<double>> values{{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}};
  const auto attacks = Attacks({{0, 0, 0}, {0, 0, 0}});
  EXPECT_EQ(OracleGroupFromValues(attacks, values), 0);
}

TEST(OracleGroup, MatchesExhaustiveSearchOnSmallInstances) {
  std::mt19937_64 gen(12);
  std::uniform_int_distribution<int> groups(1, 3), rounds(1, 6), arms(1, 4), bit(0, 1);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int trial = 0; trial < 300; ++trial) {
    const int G = groups(gen), T = rounds(gen);
    oracle::BanditInstance inst;
    std::vector<GroupParameter> thetas;
    for (int g = 0; g < G; ++g) {
      inst.thetas.push_back({u(gen), u(gen)});
      thetas.emplace_back(Eigen::Vector2d(inst.thetas[g][0], inst.thetas[g][1]));
    }
    std::vector<std::vector<ArmSet>> sets(T);
    std::vector<AttackVector> attacks;
    for (int t = 0; t < T; ++t) {
      inst.arms.emplace_back(G);
      std::vector<std::uint8_t> flags(G);
      inst.flags.emplace_back(G);
      for (int g = 0; g < G; ++g) {
        std::vector<Arm> list;
        const int K = arms(gen);
        for (int k = 0; k < K; ++k) {
          std::vector<double> x{u(gen), u(gen)};
          inst.arms[t][g].push_back(x);
          list.push_back({k, FeatureVector(Eigen::Vector2d(x[0], x[1]))});
        }
        sets[t].emplace_back(g, list);
        flags[g] = static_cast<std::uint8_t>(bit(gen));
        inst.flags[t][g] = flags[g];
      }
      attacks.emplace_back(flags);
    }
    const oracle::OracleAnswer want = oracle::BruteForceOracle(inst, 1e-12);
    const GroupIndex got = OracleGroup(
        attacks, thetas,
        [&](std::int64_t t, GroupIndex g) -> const ArmSet& { return sets[t - 1][g]; });
    if (want.unique) {
      EXPECT_EQ(got, want.group) << "trial " << trial;
    }
  }
}

TEST(OracleGroup, LengthMismatchIsContractError) {
  const auto attacks = Attacks({{1, 1}});
  const std::vector<std::vector<double>> values{{1.0, 1.0}, {1.0, 1.0}};
  EXPECT_THROW(OracleGroupFromValues(attacks, values), ContractError);
}

TEST(History, RoundsMustIncreaseByOne) {
  History h;
  h.Append({1, 0, 0, false, 0.5});
  h.Append({2, 1, 3, true, 0.0});
  EXPECT_EQ(h.size(), 2);
  EXPECT_THROW(h.Append({4, 0, 0, false, 0.1}), ContractError);
  EXPECT_THROW(h.Append({2, 0, 0, false, 0.1}), ContractError);
}

}  // namespace
}  // namespace edgebandit
