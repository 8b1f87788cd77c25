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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any fails. `--update-golden` rewrites the pinned
// rounds.csv instead of comparing against it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "edgebandit/adversaries.h"
#include "edgebandit/edge_env.h"
#include "edgebandit/metrics.h"
#include "edgebandit/policies.h"
#include "edgebandit/runner.h"
#include "edgebandit/simulation.h"
#include "oracles.h"

namespace eb = edgebandit;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

constexpr int kSeeds = 20;
constexpr std::uint64_t kGoldenSeed = 7;

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::string Slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// One run per policy and seed 1..kSeeds on a shared environment.
std::map<eb::PolicyKind, std::vector<eb::RunRecord>> RunSeeds(
    const eb::ExperimentConfig& cfg, const std::vector<eb::PolicyKind>& kinds) {
  const eb::EdgeEnvironment env(eb::BuildScenario(cfg));
  std::map<eb::PolicyKind, std::vector<eb::RunRecord>> out;
  for (eb::PolicyKind kind : kinds) {
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
      out[kind].push_back(eb::RunSingle(cfg, env, kind, seed));
    }
  }
  return out;
}

Outcome SwitchingBound() {
  const eb::ExperimentConfig base = eb::Preset("mixed");
  const int blocks = static_cast<int>(std::ceil(3000.0 / eb::TheoremSchedule(3000).block_length));
  double worst = 0.0, slowest = 0.0;
  int runs = 0;
  bool ok = true;
  for (const char* attacker : {"none", "oblivious", "adaptive", "shift"}) {
    eb::ExperimentConfig cfg = base;
    cfg.attacker = eb::ParseAttacker(attacker, 2000);
    const eb::EdgeEnvironment env(eb::BuildScenario(cfg));
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
      const auto start = Clock::now();
      const eb::RunRecord r = eb::RunSingle(cfg, env, eb::PolicyKind::kBExpUcb, seed);
      slowest = std::max(slowest, Seconds(start));
      const double s = r.cum_switch_cost.back();
      worst = std::max(worst, s);
      ok = ok && s <= blocks * r.tau;
      ++runs;
    }
  }
  ok = ok && slowest < 1.0;
  return {ok, fmt::format("max S_T = {:g} <= {} over {} runs (4 attackers x {} seeds), "
                          "slowest run {:.3f} s < 1 s",
                          worst, blocks, runs, kSeeds, slowest)};
}

Outcome SwitchingSeparation() {
  const auto runs = RunSeeds(eb::Preset("mixed"), {eb::PolicyKind::kBExpUcb, eb::PolicyKind::kExpUcb});
  std::vector<double> b, e;
  for (const auto& r : runs.at(eb::PolicyKind::kBExpUcb)) b.push_back(r.cum_switch_cost.back());
  for (const auto& r : runs.at(eb::PolicyKind::kExpUcb)) e.push_back(r.cum_switch_cost.back());
  const double ratio = Mean(b) / Mean(e);
  return {ratio <= 0.1, fmt::format("mean S_T b-expucb {:.2f} / expucb {:.2f} = {:.4f} <= 0.1",
                                    Mean(b), Mean(e), ratio)};
}

Outcome SublinearRegret() {
  const auto runs = RunSeeds(eb::Preset("yolo"), {eb::PolicyKind::kBExpUcb, eb::PolicyKind::kLocal});
  auto ratio = [&](eb::PolicyKind kind) {
    std::vector<double> half, full;
    for (const auto& r : runs.at(kind)) {
      half.push_back(r.cum_regret[1499]);
      full.push_back(r.cum_regret[2999]);
    }
    return Mean(full) / Mean(half);
  };
  const double learner = ratio(eb::PolicyKind::kBExpUcb);
  const double local = ratio(eb::PolicyKind::kLocal);
  return {learner <= 1.9 && local > 1.95,
          fmt::format("R(3000)/R(1500): b-expucb {:.4f} <= 1.9, local {:.4f} > 1.95",
                      learner, local)};
}

// Single-group linear environment with non-negative features and parameter,
// so every unattacked reward is positive.
eb::LinearEnvironment CoverageEnvironment(int dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::VectorXd theta(dim);
  for (int i = 0; i < dim; ++i) theta[i] = u(gen);
  theta *= 0.9 / theta.norm();
  std::vector<std::vector<eb::ArmSet>> tasks;
  for (int k = 0; k < 50; ++k) {
    std::vector<eb::Arm> arms;
    for (int a = 0; a < 8; ++a) {
      Eigen::VectorXd x(dim);
      for (int i = 0; i < dim; ++i) x[i] = u(gen);
      x *= (0.3 + 0.7 * u(gen)) / x.norm();
      arms.push_back({a, eb::FeatureVector(x)});
    }
    tasks.push_back({eb::ArmSet(0, std::move(arms))});
  }
  return eb::LinearEnvironment({eb::GroupParameter(theta)}, std::move(tasks));
}

Outcome ConfidenceCoverage() {
  constexpr int kDim = 5;
  constexpr std::int64_t kRounds = 10000;
  const eb::LinearEnvironment env = CoverageEnvironment(kDim, 2024);
  eb::PolicyConfig p;
  p.lambda = 1.0;
  p.sigma = 0.05;
  p.delta = 0.1;
  eb::SimulationOptions o;
  o.horizon = kRounds;
  o.seed = 1;
  o.noise = eb::NoiseSpec::Uniform(-0.05, 0.05);
  std::int64_t covered = 0, positive = 0;
  const eb::GroupParameter& theta = env.thetas()[0];
  o.observer = [&](const eb::RoundObservation& obs) {
    // Ridge state is still the one the decision was made with.
    const eb::RidgeState& ridge = obs.policy->ridge_states()[0];
    const eb::FeatureVector& x = obs.decision->arm;
    const double alpha = eb::AlphaT(obs.t - 1, p.lambda, p.sigma, kDim, p.delta);
    if (std::abs(ridge.Predict(x) - eb::Dot(theta, x)) <= alpha * ridge.Width(x)) ++covered;
    if (obs.reward > 0.0) ++positive;
  };
  const auto tasks = [](std::int64_t, eb::CounterRng& rng) {
    return static_cast<int>(rng.Uniform01() * 50);
  };
  eb::GroupLinUcb policy(p, env.dims());
  eb::Simulate(env, policy, tasks, o);
  const double coverage = static_cast<double>(covered) / kRounds;
  return {coverage >= 0.88 && positive == kRounds,
          fmt::format("coverage {:.4f} >= 0.88 over {} rounds ({} positive rewards)",
                      coverage, kRounds, positive)};
}

Outcome BonusCeiling() {
  const eb::ExperimentConfig cfg = eb::Preset("mixed");
  const eb::EdgeEnvironment env(eb::BuildScenario(cfg));
  const eb::PolicyConfig p = eb::EffectivePolicyConfig(cfg, eb::PolicyKind::kBExpUcb);
  const auto tasks = eb::MakeTaskDraw(cfg.tasks, env.scenario());
  const int groups = env.num_groups();
  double worst_ratio = 0.0;
  bool ok = true;
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    std::vector<double> bonus(groups, 0.0);
    eb::SimulationOptions o = eb::MakeSimulationOptions(cfg, seed, 1.0);
    o.observer = [&](const eb::RoundObservation& obs) {
      const eb::GroupIndex g = obs.decision->group;
      const eb::RidgeState& ridge = obs.policy->ridge_states()[g];
      const double alpha = eb::AlphaT(obs.t, p.lambda, p.sigma, env.dims()[g], p.delta);
      bonus[g] += alpha * ridge.Width(obs.decision->arm);
    };
    eb::BlockedExpUcb policy(p, env.dims());
    eb::Simulate(env, policy, tasks, o);
    for (int g = 0; g < groups; ++g) {
      const double bound = oracle::BonusSumBound(p.lambda, p.sigma, env.dims()[g], p.delta,
                                                 static_cast<double>(cfg.horizon));
      worst_ratio = std::max(worst_ratio, bonus[g] / bound);
      ok = ok && bonus[g] <= bound;
    }
  }
  return {ok, fmt::format("max per-group bonus sum / ceiling = {:.4f} <= 1 over {} seeds",
                          worst_ratio, kSeeds)};
}

Outcome ImportanceWeights() {
  constexpr int kDraws = 100000;
  const std::vector<double> probs{0.1, 0.2, 0.3, 0.4};
  const std::vector<double> rewards{0.9, 0.4, 0.7, 0.2};
  bool ok = true;
  double worst_z = 0.0;
  for (int block : {1, 208}) {
    eb::Exp3State state(static_cast<int>(probs.size()), block);
    std::vector<double> sum(probs.size(), 0.0), sq(probs.size(), 0.0);
    eb::CounterRng rng(99, eb::Stream::kPolicy, static_cast<std::uint64_t>(block));
    for (int i = 0; i < kDraws; ++i) {
      const eb::GroupIndex g = rng.Categorical(probs);
      const std::vector<double> before = state.cumulative;
      eb::UpdateCumulativeEstimates(state, g, rewards[g], probs[g]);
      for (size_t k = 0; k < probs.size(); ++k) {
        // One draw's contribution, rescaled to a per-round reward estimate.
        const double inc = (state.cumulative[k] - before[k]) * block;
        sum[k] += inc;
        sq[k] += inc * inc;
      }
    }
    for (size_t k = 0; k < probs.size(); ++k) {
      const double mean = sum[k] / kDraws;
      const double se = std::sqrt((sq[k] / kDraws - mean * mean) / kDraws);
      const double z = std::abs(mean - rewards[k]) / se;
      worst_z = std::max(worst_z, z);
      ok = ok && z <= 3.0;
    }
  }
  return {ok, fmt::format("max |mean - r| / SE = {:.3f} <= 3 over {} draws (B = 1 and 208)",
                          worst_z, kDraws)};
}

Outcome PruningSoundness() {
  std::mt19937_64 gen(7);
  int decided = 0, mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    oracle::Instance in = oracle::RandomInstance(gen, 5, 3, 1, trial % 2 == 0);
    if (trial % 4 == 1) {
      for (size_t m = 1; m < in.p.size(); ++m) in.p[m] = in.p[m - 1] * 4.0;
      for (double& b : in.b) b *= 50.0;
    }
    std::vector<eb::DnnLayer> layers;
    for (int l = 0; l < in.layers(); ++l) layers.push_back({in.c[l], in.s[l + 1]});
    const eb::DnnProfile dnn("random", in.s[0], layers);
    const eb::ResolvedPath path{in.p, in.b};

    auto best_over = [&](const std::vector<eb::LayerAssignment>& fs) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& f : fs) best = std::min(best, eb::DelayComponents(path, f, dnn).total());
      return best;
    };
    const std::vector<int> cand = eb::PruneSplittingPoints(dnn);
    const double pruned = best_over(eb::EnumerateAssignments(in.hops(), dnn, std::span<const int>(cand)));
    const double full = best_over(eb::EnumerateAssignments(in.hops(), dnn));
    const double brute = oracle::MinDelay(in);
    bool ok = pruned == full && std::abs(full - brute) <= 1e-12 * std::max(1.0, brute);

    const eb::Degeneracy v = eb::DegenerateAssignmentCheck(path, dnn);
    if (v != eb::Degeneracy::kInconclusive) {
      ++decided;
      const std::vector<int> f(in.layers(), v == eb::Degeneracy::kAllOnDestination ? in.hops() : 0);
      ok = ok && std::abs(oracle::Delay(in, f) - brute) <= 1e-12 * std::max(1.0, brute);
    }
    if (!ok) ++mismatches;
  }
  return {mismatches == 0,
          fmt::format("{} mismatches over 1000 instances (L <= 5, M <= 3); {} single-node "
                      "verdicts confirmed",
                      mismatches, decided)};
}

Outcome OracleEquivalence() {
  std::mt19937_64 gen(31);
  std::uniform_int_distribution<int> groups(1, 3), rounds(1, 6), arm_count(1, 4), bit(0, 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int mismatches = 0, ties = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int G = groups(gen), T = rounds(gen), d = 3;
    oracle::BanditInstance inst;
    std::vector<eb::GroupParameter> thetas;
    for (int g = 0; g < G; ++g) {
      std::vector<double> th(d);
      for (double& v : th) v = u(gen);
      inst.thetas.push_back(th);
      thetas.emplace_back(Eigen::Map<Eigen::VectorXd>(th.data(), d));
    }
    std::vector<std::vector<eb::ArmSet>> sets(T);
    std::vector<eb::AttackVector> attacks;
    for (int t = 0; t < T; ++t) {
      inst.arms.emplace_back(G);
      inst.flags.emplace_back(G);
      std::vector<std::uint8_t> flags(G);
      for (int g = 0; g < G; ++g) {
        std::vector<eb::Arm> arms;
        const int K = arm_count(gen);
        for (int k = 0; k < K; ++k) {
          std::vector<double> x(d);
          for (double& v : x) v = u(gen) / std::sqrt(3.0);
          inst.arms[t][g].push_back(x);
          arms.push_back({k, eb::FeatureVector(Eigen::Map<Eigen::VectorXd>(x.data(), d))});
        }
        sets[t].emplace_back(g, std::move(arms));
        flags[g] = static_cast<std::uint8_t>(bit(gen));
        inst.flags[t][g] = flags[g];
      }
      attacks.emplace_back(flags);
    }
    const oracle::OracleAnswer want = oracle::BruteForceOracle(inst, 1e-12);
    const eb::GroupIndex got = eb::OracleGroup(
        attacks, thetas,
        [&](std::int64_t t, eb::GroupIndex g) -> const eb::ArmSet& { return sets[t - 1][g]; });
    if (want.unique) {
      mismatches += got != want.group;
    } else {
      // Tied groups: any of them is a hindsight optimum.
      ++ties;
      double value = 0.0;
      for (int t = 0; t < T; ++t) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& x : inst.arms[t][got]) {
          best = std::max(best, oracle::DotProduct(inst.thetas[got], x));
        }
        value += inst.flags[t][got] * best;
      }
      mismatches += std::abs(value - want.value) > 1e-9;
    }
  }
  return {mismatches == 0, fmt::format("{} mismatches over 500 instances (G <= 3, T <= 6, "
                                       "<= 4 arms; {} with tied optima)",
                                       mismatches, ties)};
}

Outcome BaselineOrdering() {
  const std::vector<eb::PolicyKind> order{eb::PolicyKind::kOracle, eb::PolicyKind::kExpUcb,
                                          eb::PolicyKind::kBExpUcb, eb::PolicyKind::kLinUcb,
                                          eb::PolicyKind::kExp3, eb::PolicyKind::kLocal};
  const auto runs = RunSeeds(eb::Preset("mixed"), order);
  std::vector<double> means;
  std::string detail;
  for (eb::PolicyKind kind : order) {
    std::vector<double> finals;
    for (const auto& r : runs.at(kind)) finals.push_back(r.cum_reward.back());
    means.push_back(Mean(finals));
    detail += fmt::format("{}{} {:.1f}", detail.empty() ? "" : " >= ", eb::PolicyKindName(kind),
                          means.back());
  }
  bool ok = true;
  for (size_t i = 1; i < means.size(); ++i) ok = ok && means[i - 1] >= means[i];
  const double gap = std::abs(means[1] - means[2]) / std::max(means[1], means[2]);
  ok = ok && gap <= 0.10;
  return {ok, fmt::format("{}; expucb vs b-expucb gap {:.1f}% <= 10%", detail, 100.0 * gap)};
}

std::string GoldenRounds(const fs::path& scratch) {
  eb::ExperimentConfig cfg = eb::Preset("mixed");
  const eb::EdgeEnvironment env(eb::BuildScenario(cfg));
  eb::EmitCsv(eb::RunSingle(cfg, env, eb::PolicyKind::kBExpUcb, kGoldenSeed), scratch);
  return Slurp(scratch / "rounds.csv");
}

Outcome GoldenDeterminism(bool update) {
  const fs::path golden = fs::path(EDGEBANDIT_TEST_DATA_DIR) / "golden" / "rounds.csv";
  const fs::path scratch = fs::temp_directory_path() / "edgebandit_acceptance_golden";
  fs::remove_all(scratch);
  const std::string first = GoldenRounds(scratch / "a");
  const std::string second = GoldenRounds(scratch / "b");
  fs::remove_all(scratch);
  if (update) {
    fs::create_directories(golden.parent_path());
    std::ofstream(golden, std::ios::binary) << first;
  }
  if (!fs::exists(golden)) return {false, "missing " + golden.string()};
  const std::string stored = Slurp(golden);
  const bool ok = first == second && first == stored;
  return {ok, fmt::format("mixed / b-expucb / seed {}: repeat {}, golden {} ({} bytes){}",
                          kGoldenSeed, first == second ? "identical" : "DIFFERS",
                          first == stored ? "identical" : "DIFFERS", stored.size(),
                          update ? " [golden rewritten]" : "")};
}

}  // namespace

int main(int argc, char** argv) {
  bool update_golden = false;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--update-golden") update_golden = true;
  }

  struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "switching bound", 0, SwitchingBound},
      {2, "switching separation", 60, SwitchingSeparation},
      {3, "sublinear reward regret", 120, SublinearRegret},
      {4, "confidence coverage", 10, ConfidenceCoverage},
      {5, "exploration bonus ceiling", 60, BonusCeiling},
      {6, "importance-weight unbiasedness", 5, ImportanceWeights},
      {7, "pruning and degeneracy soundness", 30, PruningSoundness},
      {8, "oracle equivalence", 10, OracleEquivalence},
      {9, "baseline ordering", 180, BaselineOrdering},
      {10, "golden determinism", 0, [&] { return GoldenDeterminism(update_golden); }},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double elapsed = Seconds(start);
    std::string timing = fmt::format("{:.2f} s", elapsed);
    if (c.budget_s > 0) {
      timing += fmt::format(" < {:g} s", c.budget_s);
      if (elapsed >= c.budget_s) {
        o.pass = false;
        timing += " EXCEEDED";
      }
    }
    if (!o.pass) ++failed;
    std::printf("%s [%d] %s: %s (%s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
