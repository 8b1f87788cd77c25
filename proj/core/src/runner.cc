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

#include "edgebandit/runner.h"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "edgebandit/errors.h"
#include "edgebandit/scenario_io.h"

namespace edgebandit {
namespace {

using nlohmann::json;

constexpr std::string_view kRoundsHeader =
    "t,group,arm_id,attacked,reward,cum_reward,cum_regret,cum_switch_cost";

std::vector<std::string> Split(std::string_view text, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double ToDouble(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw ConfigError(what + ": '" + text + "' is not a number");
  }
  return v;
}

bool InUnit(double p) { return p >= 0.0 && p <= 1.0; }

std::vector<std::uint64_t> SeedRange(std::uint64_t first, std::uint64_t last) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = first; s <= last; ++s) out.push_back(s);
  return out;
}

std::vector<PolicyKind> MainComparison() {
  return {PolicyKind::kOracle, PolicyKind::kExpUcb, PolicyKind::kBExpUcb,
          PolicyKind::kLinUcb, PolicyKind::kExp3,   PolicyKind::kLocal};
}

void WriteAtomically(const std::filesystem::path& file, const std::string& text) {
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) throw ConfigError("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, file);
}

MarkovAttackMatrix MatrixFromJson(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": matrix must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (const json& row : j) {
    if (!row.is_array()) throw ConfigError(where + ": matrix rows must be arrays");
    std::vector<double> r;
    for (const json& v : row) {
      if (!v.is_number()) throw ConfigError(where + ": entries must be numbers");
      r.push_back(v.get<double>());
    }
    rows.push_back(std::move(r));
  }
  return MarkovAttackMatrix(std::move(rows));
}

json ConfigToJson(const PolicyConfig& p) {
  json j;
  j["eta"] = p.eta;
  j["beta"] = p.beta;
  j["lambda"] = p.lambda;
  j["delta"] = p.delta;
  j["sigma"] = p.sigma;
  j["d"] = p.d ? json(*p.d) : json("feature_dim");
  j["block_length"] = p.block_length;
  j["tau"] = p.tau;
  return j;
}

std::string NoiseName(const NoiseSpec& n) {
  switch (n.kind) {
    case NoiseSpec::Kind::kNone:
      return "none";
    case NoiseSpec::Kind::kUniform:
      return fmt::format("uniform[{},{}]", n.lo, n.hi);
    case NoiseSpec::Kind::kGaussian:
      return fmt::format("gaussian({})", n.sigma);
  }
  return "none";
}

}  // namespace

TaskDistribution TaskDistribution::SecondaryOnly() {
  TaskDistribution d;
  d.kind = Kind::kSecondaryOnly;
  return d;
}

TaskDistribution TaskDistribution::Mixed(double p_primary) {
  TaskDistribution d;
  d.kind = Kind::kMixed;
  d.p_primary = p_primary;
  return d;
}

TaskDistribution TaskDistribution::Shift(double p_before, double p_after,
                                         std::int64_t switch_round) {
  TaskDistribution d;
  d.kind = Kind::kShift;
  d.p_before = p_before;
  d.p_after = p_after;
  d.switch_round = switch_round;
  return d;
}

double TaskDistribution::PrimaryProbability(std::int64_t t) const {
  switch (kind) {
    case Kind::kPrimaryOnly:
      return 1.0;
    case Kind::kSecondaryOnly:
      return 0.0;
    case Kind::kMixed:
      return p_primary;
    case Kind::kShift:
      return t < switch_round ? p_before : p_after;
  }
  return 1.0;
}

std::string TaskDistribution::Describe() const {
  switch (kind) {
    case Kind::kPrimaryOnly:
      return primary;
    case Kind::kSecondaryOnly:
      return secondary;
    case Kind::kMixed:
      return fmt::format("mixed:{}", p_primary);
    case Kind::kShift:
      return fmt::format("shift:{}:{}:{}", p_before, p_after, switch_round);
  }
  return primary;
}

TaskDistribution ParseTaskDistribution(std::string_view text) {
  const std::vector<std::string> parts = Split(text, ':');
  const std::string& head = parts.front();
  if ((head == "yolo" || head == "yolo_only") && parts.size() == 1) {
    return TaskDistribution::PrimaryOnly();
  }
  if ((head == "resnet" || head == "resnet_only") && parts.size() == 1) {
    return TaskDistribution::SecondaryOnly();
  }
  if (head == "mixed" && parts.size() <= 2) {
    return TaskDistribution::Mixed(
        parts.size() == 2 ? ToDouble(parts[1], "mixed probability") : 0.5);
  }
  if (head == "shift" && (parts.size() == 1 || parts.size() == 4)) {
    if (parts.size() == 1) return TaskDistribution::Shift(0.8, 0.2, 2000);
    return TaskDistribution::Shift(
        ToDouble(parts[1], "shift p_before"), ToDouble(parts[2], "shift p_after"),
        static_cast<std::int64_t>(ToDouble(parts[3], "shift round")));
  }
  throw ConfigError("unknown task distribution '" + std::string(text) +
                    "' (use yolo, resnet, mixed[:p] or shift[:p_before:p_after:round])");
}

std::vector<std::string> ExperimentConfig::Validate() const {
  std::vector<std::string> problems;
  if (name.empty()) problems.push_back("name must not be empty");
  if (scenario.empty()) problems.push_back("scenario must not be empty");
  if (horizon < 1) problems.push_back("horizon T must be >= 1");
  if (seeds.empty()) problems.push_back("at least one seed is required");
  if (policies.empty()) problems.push_back("at least one policy is required");
  if (jobs < 1) problems.push_back("jobs must be >= 1");
  if (deadline && !(*deadline > 0.0)) problems.push_back("deadline must be > 0");
  if (tau && !(*tau >= 0.0)) problems.push_back("tau must be >= 0");
  switch (tasks.kind) {
    case TaskDistribution::Kind::kMixed:
      if (!InUnit(tasks.p_primary)) problems.push_back("task probability must lie in [0, 1]");
      break;
    case TaskDistribution::Kind::kShift:
      if (!InUnit(tasks.p_before) || !InUnit(tasks.p_after)) {
        problems.push_back("task probabilities must lie in [0, 1]");
      }
      if (tasks.switch_round < 1) problems.push_back("task switch round must be >= 1");
      break;
    default:
      break;
  }
  if (attacker.kind == AttackerSpec::Kind::kObliviousMarkov && !attacker.matrix) {
    problems.push_back("oblivious attacker needs a transition matrix");
  }
  if (attacker.kind == AttackerSpec::Kind::kTimeVarying &&
      (!attacker.matrix || !attacker.matrix_after || attacker.switch_round < 1)) {
    problems.push_back("time-varying attacker needs two matrices and a switch round >= 1");
  }
  try {
    noise.Validate();
  } catch (const ContractError& e) {
    problems.push_back(e.what());
  }
  if (horizon >= 1) {
    for (PolicyKind kind : policies) {
      try {
        EffectivePolicyConfig(*this, kind).Validate();
      } catch (const ContractError& e) {
        problems.push_back(std::string(PolicyKindName(kind)) + ": " + e.what());
      }
    }
  }
  return problems;
}

std::vector<std::string> PresetNames() {
  return {"yolo", "resnet", "mixed", "task-shift", "attacker-shift", "adaptive"};
}

ExperimentConfig Preset(std::string_view name) {
  ExperimentConfig cfg;
  cfg.name = std::string(name);
  cfg.scenario = "single-relay";
  cfg.policies = MainComparison();
  cfg.horizon = 3000;
  cfg.attacker = AttackerSpec::Oblivious(DefaultObliviousMatrix());
  if (name == "yolo") {
    cfg.tasks = TaskDistribution::PrimaryOnly();
  } else if (name == "resnet") {
    cfg.tasks = TaskDistribution::SecondaryOnly();
  } else if (name == "mixed") {
    cfg.tasks = TaskDistribution::Mixed(0.5);
  } else if (name == "task-shift") {
    cfg.tasks = TaskDistribution::Shift(0.8, 0.2, 2000);
    cfg.horizon = 6000;
    cfg.policies.push_back(PolicyKind::kLinUcbRandom);
  } else if (name == "attacker-shift") {
    cfg.tasks = TaskDistribution::SecondaryOnly();
    cfg.attacker = AttackerSpec::TimeVarying(ShiftBeforeMatrix(), ShiftAfterMatrix(), 2000);
    cfg.horizon = 6000;
    cfg.policies.push_back(PolicyKind::kLinUcbRandom);
  } else if (name == "adaptive") {
    cfg.tasks = TaskDistribution::SecondaryOnly();
    cfg.attacker = AttackerSpec::Adaptive();
  } else {
    std::string known;
    for (const std::string& n : PresetNames()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
  }
  return cfg;
}

std::vector<std::uint64_t> ParseSeeds(std::string_view text) {
  auto number = [&](const std::string& part) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw ConfigError("seeds: '" + std::string(text) + "' is not a seed list");
    }
    return v;
  };
  std::vector<std::uint64_t> seeds;
  if (text.find('-') != std::string_view::npos) {
    const std::vector<std::string> bounds = Split(text, '-');
    if (bounds.size() != 2) throw ConfigError("seeds: malformed range '" + std::string(text) + "'");
    const std::uint64_t first = number(bounds[0]);
    const std::uint64_t last = number(bounds[1]);
    if (last < first) throw ConfigError("seeds: empty range '" + std::string(text) + "'");
    return SeedRange(first, last);
  }
  for (const std::string& part : Split(text, ',')) seeds.push_back(number(part));
  return seeds;
}

AttackerSpec ParseAttacker(std::string_view text, std::int64_t switch_round) {
  if (text == "none") return AttackerSpec::None();
  if (text == "oblivious") return AttackerSpec::Oblivious(DefaultObliviousMatrix());
  if (text == "adaptive") return AttackerSpec::Adaptive();
  if (text == "shift" || text == "time-varying") {
    return AttackerSpec::TimeVarying(ShiftBeforeMatrix(), ShiftAfterMatrix(),
                                     switch_round);
  }
  throw ConfigError("unknown attacker '" + std::string(text) +
                    "' (use none, oblivious, adaptive or shift)");
}

ExperimentConfig ParseExperimentConfigJson(std::string_view text,
                                           const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");

  std::vector<std::string> problems;
  ExperimentConfig cfg;
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) throw ConfigError("config: 'preset' must be a string");
    cfg = Preset(doc["preset"].get<std::string>());
  }
  static const std::set<std::string> kKeys{
      "preset", "name",  "scenario", "deadline_s", "tau",   "tasks", "attacker",
      "policies", "policy", "horizon", "seeds",    "out",   "noise", "regret", "jobs"};
  for (const auto& [key, value] : doc.items()) {
    if (!kKeys.count(key)) problems.push_back("config: unknown key '" + key + "'");
  }

  auto guarded = [&](const char* key, auto&& fn) {
    if (!doc.contains(key)) return;
    try {
      fn(doc[key]);
    } catch (const ConfigError& e) {
      for (const std::string& d : e.diagnostics()) problems.push_back(d);
    } catch (const json::exception&) {
      problems.push_back(std::string("config: '") + key + "' has the wrong type");
    }
  };

  guarded("name", [&](const json& j) { cfg.name = j.get<std::string>(); });
  guarded("scenario", [&](const json& j) {
    std::string s = j.get<std::string>();
    const std::filesystem::path p(s);
    if (p.has_extension() && p.is_relative() && !base_dir.empty()) {
      s = (base_dir / p).string();
    }
    cfg.scenario = s;
  });
  guarded("deadline_s", [&](const json& j) { cfg.deadline = j.get<double>(); });
  guarded("tau", [&](const json& j) { cfg.tau = j.get<double>(); });
  guarded("tasks", [&](const json& j) {
    if (j.is_string()) {
      cfg.tasks = ParseTaskDistribution(j.get<std::string>());
      return;
    }
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "yolo_only" || kind == "yolo") {
      cfg.tasks = TaskDistribution::PrimaryOnly();
    } else if (kind == "resnet_only" || kind == "resnet") {
      cfg.tasks = TaskDistribution::SecondaryOnly();
    } else if (kind == "mixed") {
      cfg.tasks = TaskDistribution::Mixed(j.value("p_yolo", 0.5));
    } else if (kind == "shift") {
      cfg.tasks = TaskDistribution::Shift(j.value("p_before", 0.8),
                                          j.value("p_after", 0.2),
                                          j.value("switch_round", std::int64_t{2000}));
    } else {
      throw ConfigError("config: unknown task kind '" + kind + "'");
    }
  });
  guarded("attacker", [&](const json& j) {
    if (j.is_string()) {
      cfg.attacker = ParseAttacker(j.get<std::string>(), 2000);
      return;
    }
    const std::string kind = j.at("kind").get<std::string>();
    const GroupIndex initial = j.value("initial", 1) - 1;
    if (kind == "none") {
      cfg.attacker = AttackerSpec::None();
    } else if (kind == "adaptive") {
      cfg.attacker = AttackerSpec::Adaptive();
    } else if (kind == "oblivious") {
      cfg.attacker = AttackerSpec::Oblivious(
          j.contains("matrix") ? MatrixFromJson(j["matrix"], "attacker.matrix")
                               : DefaultObliviousMatrix(),
          initial);
    } else if (kind == "shift" || kind == "time-varying") {
      cfg.attacker = AttackerSpec::TimeVarying(
          j.contains("matrix") ? MatrixFromJson(j["matrix"], "attacker.matrix")
                               : ShiftBeforeMatrix(),
          j.contains("matrix_after")
              ? MatrixFromJson(j["matrix_after"], "attacker.matrix_after")
              : ShiftAfterMatrix(),
          j.value("switch_round", std::int64_t{2000}), initial);
    } else {
      throw ConfigError("config: unknown attacker kind '" + kind + "'");
    }
  });
  guarded("policies", [&](const json& j) {
    cfg.policies.clear();
    if (j.is_string()) {
      cfg.policies.push_back(ParsePolicyKind(j.get<std::string>()));
      return;
    }
    for (const json& p : j) cfg.policies.push_back(ParsePolicyKind(p.get<std::string>()));
  });
  guarded("policy", [&](const json& j) {
    if (j.is_string()) {
      if (j.get<std::string>() != "theorem") {
        throw ConfigError("config: 'policy' must be \"theorem\" or an object");
      }
      cfg.theorem_schedule = true;
      return;
    }
    PolicyConfig& p = cfg.policy;
    cfg.theorem_schedule = j.value("theorem", false);
    p.eta = j.value("eta", p.eta);
    p.beta = j.value("beta", p.beta);
    p.lambda = j.value("lambda", p.lambda);
    p.delta = j.value("delta", p.delta);
    p.sigma = j.value("sigma", p.sigma);
    if (j.contains("d")) p.d = j["d"].get<int>();
    p.block_length = j.value("block_length", p.block_length);
  });
  guarded("horizon", [&](const json& j) { cfg.horizon = j.get<std::int64_t>(); });
  guarded("seeds", [&](const json& j) {
    cfg.seeds.clear();
    if (j.is_number_integer()) {
      cfg.seeds = SeedRange(1, j.get<std::uint64_t>());
      return;
    }
    for (const json& s : j) cfg.seeds.push_back(s.get<std::uint64_t>());
  });
  guarded("out", [&](const json& j) {
    std::filesystem::path p = j.get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    cfg.out_dir = p;
  });
  guarded("noise", [&](const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "none") {
      cfg.noise = NoiseSpec::None(j.value("sigma_param", 0.05));
    } else if (kind == "uniform") {
      cfg.noise = NoiseSpec::Uniform(j.value("lo", -0.05), j.value("hi", 0.05));
    } else if (kind == "gaussian") {
      cfg.noise = NoiseSpec::Gaussian(j.value("sigma", 0.05));
    } else {
      throw ConfigError("config: unknown noise kind '" + kind + "'");
    }
  });
  guarded("regret", [&](const json& j) {
    const std::string mode = j.get<std::string>();
    if (mode == "expected") {
      cfg.regret_mode = RegretMode::kExpected;
    } else if (mode == "realized") {
      cfg.regret_mode = RegretMode::kRealized;
    } else {
      throw ConfigError("config: regret must be \"expected\" or \"realized\"");
    }
  });
  guarded("jobs", [&](const json& j) { cfg.jobs = j.get<int>(); });

  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot open config '" + file.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return ParseExperimentConfigJson(text.str(), file.parent_path());
}

PolicyConfig EffectivePolicyConfig(const ExperimentConfig& cfg, PolicyKind kind) {
  PolicyConfig p = cfg.policy;
  if (cfg.theorem_schedule) {
    const Schedule s = TheoremSchedule(cfg.horizon);
    p.beta = s.beta;
    p.eta = s.eta;
    p.block_length = s.block_length;
  }
  if (kind != PolicyKind::kBExpUcb) p.block_length = 1;
  if (cfg.tau) p.tau = *cfg.tau;
  return p;
}

std::shared_ptr<const EdgeScenario> BuildScenario(const ExperimentConfig& cfg) {
  ScenarioSpec spec = ResolveScenario(cfg.scenario);
  if (cfg.deadline) {
    spec.deadline = *cfg.deadline;
    spec.profile_deadlines.clear();
  }
  if (cfg.tau) spec.tau = *cfg.tau;

  // Keep only the profiles the task distribution can draw, so the deadline
  // check is not failed by a profile the experiment never runs.
  std::vector<std::string> problems;
  std::vector<DnnProfile> used;
  auto require = [&](const std::string& profile) {
    for (const DnnProfile& p : spec.profiles) {
      if (p.name() == profile) {
        used.push_back(p);
        return;
      }
    }
    problems.push_back("scenario '" + spec.name + "' has no profile '" + profile + "'");
  };
  if (cfg.tasks.kind != TaskDistribution::Kind::kSecondaryOnly) require(cfg.tasks.primary);
  if (cfg.tasks.kind != TaskDistribution::Kind::kPrimaryOnly) require(cfg.tasks.secondary);
  if (!problems.empty()) throw ConfigError(std::move(problems));
  spec.profiles = std::move(used);
  std::erase_if(spec.profile_deadlines, [&](const auto& entry) {
    return std::none_of(spec.profiles.begin(), spec.profiles.end(),
                        [&](const DnnProfile& p) { return p.name() == entry.first; });
  });

  auto scenario = std::make_shared<const EdgeScenario>(std::move(spec),
                                                        cfg.noise.Amplitude());
  problems = cfg.attacker.Validate(scenario->num_groups());
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return scenario;
}

TaskDraw MakeTaskDraw(const TaskDistribution& tasks, const EdgeScenario& scenario) {
  const int primary = scenario.ProfileIndex(tasks.primary);
  const int secondary = scenario.ProfileIndex(tasks.secondary);
  return [tasks, primary, secondary](std::int64_t t, CounterRng& rng) {
    const double p = tasks.PrimaryProbability(t);
    const int pick = rng.Uniform01() < p ? primary : secondary;
    if (pick < 0) throw ContractError("task draw: profile missing from scenario");
    return pick;
  };
}

SimulationOptions MakeSimulationOptions(const ExperimentConfig& cfg,
                                        std::uint64_t seed, double tau) {
  SimulationOptions o;
  o.horizon = cfg.horizon;
  o.seed = seed;
  o.noise = cfg.noise;
  o.attacker = cfg.attacker;
  o.regret_mode = cfg.regret_mode;
  o.tau = tau;
  return o;
}

RunRecord RunSingle(const ExperimentConfig& cfg, const EdgeEnvironment& env,
                    PolicyKind kind, std::uint64_t seed) {
  const double tau = cfg.tau.value_or(env.scenario().spec().tau);
  PolicyConfig p = EffectivePolicyConfig(cfg, kind);
  p.tau = tau;
  return RunPolicy(env, kind, p, MakeTaskDraw(cfg.tasks, env.scenario()),
                   MakeSimulationOptions(cfg, seed, tau));
}

void PreflightOutputDir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw ConfigError("output directory '" + dir.string() +
                      "' cannot be created: " + ec.message());
  }
  const std::filesystem::path probe = dir / ".edgebandit_write_probe";
  {
    std::ofstream out(probe);
    if (!out || !(out << "ok") || !out.flush()) {
      throw ConfigError("output directory '" + dir.string() + "' is not writable");
    }
  }
  std::filesystem::remove(probe, ec);
}

std::string FormatValue(double v) { return fmt::format("{:.9g}", v); }

void EmitCsv(const RunRecord& record, const std::filesystem::path& dir,
             const std::string& params_json) {
  std::filesystem::create_directories(dir);
  const int g_count = record.num_groups;

  std::string rounds(kRoundsHeader);
  rounds += '\n';
  for (size_t i = 0; i < record.rows.size(); ++i) {
    const RoundRow& r = record.rows[i];
    rounds += fmt::format("{},{},{},{},{},{},{},{}\n", r.t,
                          r.group == kLocalGroup ? 0 : r.group + 1, r.arm_id,
                          r.attacked ? 1 : 0, FormatValue(r.reward),
                          FormatValue(record.cum_reward[i]),
                          FormatValue(record.cum_regret[i]),
                          FormatValue(record.cum_switch_cost[i]));
  }

  std::string sampling = "t";
  std::string pred = "t";
  for (int g = 1; g <= g_count; ++g) {
    sampling += fmt::format(",p_{}", g);
    pred += fmt::format(",err_{}", g);
  }
  sampling += '\n';
  pred += '\n';
  for (size_t i = 0; i < record.rows.size(); ++i) {
    sampling += std::to_string(record.rows[i].t);
    pred += std::to_string(record.rows[i].t);
    for (int g = 0; g < g_count; ++g) {
      sampling += ',' + FormatValue(record.sampling[i].at(g));
      const auto& errors = record.pred_error[i];
      pred += ',' + (errors.empty() ? std::string("nan") : FormatValue(errors.at(g)));
    }
    sampling += '\n';
    pred += '\n';
  }

  WriteAtomically(dir / "rounds.csv", rounds);
  WriteAtomically(dir / "sampling.csv", sampling);
  WriteAtomically(dir / "pred_error.csv", pred);
  WriteAtomically(dir / "run.json", params_json + "\n");
}

std::vector<ParsedRound> ParseRoundsCsv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open '" + file.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != kRoundsHeader) {
    throw ConfigError(file.string() + ": unexpected header");
  }
  std::vector<ParsedRound> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> c = Split(line, ',');
    const std::string where = fmt::format("{} line {}", file.string(), line_no);
    if (c.size() != 8) throw ConfigError(where + ": expected 8 columns");
    ParsedRound r;
    r.t = static_cast<std::int64_t>(ToDouble(c[0], where));
    r.group = static_cast<int>(ToDouble(c[1], where));
    r.arm_id = static_cast<int>(ToDouble(c[2], where));
    r.attacked = ToDouble(c[3], where) != 0.0;
    r.reward = ToDouble(c[4], where);
    r.cum_reward = ToDouble(c[5], where);
    r.cum_regret = ToDouble(c[6], where);
    r.cum_switch_cost = ToDouble(c[7], where);
    rows.push_back(r);
  }
  return rows;
}

std::filesystem::path DefaultOutputDir() {
  const char* env = std::getenv("EDGEBANDIT_OUT");
  if (env != nullptr && env[0] != '\0') return env;
  return "results";
}

std::vector<RunOutput> RunExperiment(const ExperimentConfig& cfg) {
  std::vector<std::string> problems = cfg.Validate();
  if (!problems.empty()) throw ConfigError(std::move(problems));

  const std::filesystem::path root =
      (cfg.out_dir.empty() ? DefaultOutputDir() : cfg.out_dir) / cfg.name;
  PreflightOutputDir(root);
  const EdgeEnvironment env(BuildScenario(cfg));

  struct Job {
    PolicyKind kind;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (PolicyKind kind : cfg.policies) {
    for (std::uint64_t seed : cfg.seeds) jobs.push_back({kind, seed});
  }
  std::vector<RunOutput> outputs(jobs.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        const Job& job = jobs[i];
        const RunRecord record = RunSingle(cfg, env, job.kind, job.seed);
        PolicyConfig p = EffectivePolicyConfig(cfg, job.kind);
        p.tau = record.tau;
        json params;
        params["experiment"] = cfg.name;
        params["scenario"] = env.scenario().spec().name;
        params["policy"] = record.policy;
        params["seed"] = job.seed;
        params["horizon"] = cfg.horizon;
        json deadlines = json::object();
        const auto& profiles = env.scenario().spec().profiles;
        for (size_t k = 0; k < profiles.size(); ++k) {
          deadlines[profiles[k].name()] = env.scenario().deadline(static_cast<int>(k));
        }
        params["deadline_s"] = deadlines;
        params["kappa"] = env.scenario().scaling().kappa;
        params["tasks"] = cfg.tasks.Describe();
        params["attacker"] = AttackerKindName(cfg.attacker.kind);
        params["noise"] = NoiseName(cfg.noise);
        params["regret"] = cfg.regret_mode == RegretMode::kExpected ? "expected"
                                                                      : "realized";
        params["theorem_schedule"] = cfg.theorem_schedule;
        params["params"] = ConfigToJson(p);
        params["oracle_group"] = record.oracle_group + 1;
        params["final"] = {{"cum_reward", record.cum_reward.back()},
                           {"cum_regret", record.cum_regret.back()},
                           {"cum_switch_cost", record.cum_switch_cost.back()}};
        const std::filesystem::path dir = root / std::string(PolicyKindName(job.kind)) /
                                          fmt::format("seed_{}", job.seed);
        EmitCsv(record, dir, params.dump(2));
        outputs[i] = RunOutput{job.kind, job.seed, dir, record.cum_reward.back(),
                               record.cum_regret.back(),
                               record.cum_switch_cost.back()};
        spdlog::debug("{} seed {} -> {}", record.policy, job.seed, dir.string());
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(jobs.size());
      }
    }
  };

  const int threads = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(jobs.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return outputs;
}

}  // namespace edgebandit
