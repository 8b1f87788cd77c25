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

#include "edgebandit/edge_env.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <string>
#include <utility>

#include "edgebandit/errors.h"

namespace edgebandit {

DnnProfile::DnnProfile(std::string name, double input_size,
                       std::vector<DnnLayer> layers)
    : name_(std::move(name)), input_size_(input_size), layers_(std::move(layers)) {
  std::vector<std::string> problems;
  const std::string where = "profile '" + name_ + "'";
  if (layers_.empty()) problems.push_back(where + ": needs at least one layer");
  if (!(input_size_ > 0.0) || !std::isfinite(input_size_)) {
    problems.push_back(where + ": input size must be > 0");
  }
  for (size_t i = 0; i < layers_.size(); ++i) {
    const std::string layer = where + " layer " + std::to_string(i + 1);
    if (!(layers_[i].workload > 0.0) || !std::isfinite(layers_[i].workload)) {
      problems.push_back(layer + ": workload must be > 0");
    }
    if (!(layers_[i].output_size > 0.0) || !std::isfinite(layers_[i].output_size)) {
      problems.push_back(layer + ": output size must be > 0");
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

double DnnProfile::size_at(int l) const {
  if (l == 0) return input_size_;
  return layers_.at(l - 1).output_size;
}

double DnnProfile::total_workload() const {
  double total = 0.0;
  for (const DnnLayer& layer : layers_) total += layer.workload;
  return total;
}

NetworkGraph::NetworkGraph(std::vector<Node> nodes, std::vector<Link> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
  std::vector<std::string> problems;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (!node_index_.emplace(n.id, static_cast<int>(i)).second) {
      problems.push_back("node '" + n.id + "': duplicate id");
    }
    if (!(n.speed > 0.0) || !std::isfinite(n.speed)) {
      problems.push_back("node '" + n.id + "': speed must be > 0");
    }
  }
  for (size_t i = 0; i < links_.size(); ++i) {
    const Link& e = links_[i];
    if (!link_index_.emplace(e.id, static_cast<int>(i)).second) {
      problems.push_back("link '" + e.id + "': duplicate id");
    }
    if (!(e.rate > 0.0) || !std::isfinite(e.rate)) {
      problems.push_back("link '" + e.id + "': rate must be > 0");
    }
    if (!has_node(e.from)) {
      problems.push_back("link '" + e.id + "': unknown node '" + e.from + "'");
    }
    if (!has_node(e.to)) {
      problems.push_back("link '" + e.id + "': unknown node '" + e.to + "'");
    }
  }
  if (problems.empty()) {
    // Kahn's algorithm; leftover nodes sit on a cycle.
    std::vector<int> indegree(nodes_.size(), 0);
    std::vector<std::vector<int>> out(nodes_.size());
    for (const Link& e : links_) {
      out[node_index_[e.from]].push_back(node_index_[e.to]);
      ++indegree[node_index_[e.to]];
    }
    std::vector<int> ready;
    for (size_t i = 0; i < nodes_.size(); ++i) {
      if (indegree[i] == 0) ready.push_back(static_cast<int>(i));
    }
    size_t seen = 0;
    while (!ready.empty()) {
      const int v = ready.back();
      ready.pop_back();
      ++seen;
      for (int w : out[v]) {
        if (--indegree[w] == 0) ready.push_back(w);
      }
    }
    if (seen != nodes_.size()) problems.push_back("network graph has a cycle");
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

const Node& NetworkGraph::node(const std::string& id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) throw ContractError("unknown node '" + id + "'");
  return nodes_[it->second];
}

const Link& NetworkGraph::link(const std::string& id) const {
  auto it = link_index_.find(id);
  if (it == link_index_.end()) throw ContractError("unknown link '" + id + "'");
  return links_[it->second];
}

std::vector<std::string> InferencePath::Validate(const NetworkGraph& graph) const {
  std::vector<std::string> problems;
  if (nodes.empty()) {
    problems.push_back("path: no nodes");
    return problems;
  }
  if (nodes.size() != links.size() + 1) {
    problems.push_back("path: " + std::to_string(nodes.size()) + " nodes but " +
                       std::to_string(links.size()) + " links");
    return problems;
  }
  std::set<std::string> seen;
  for (const std::string& n : nodes) {
    if (!graph.has_node(n)) problems.push_back("path: unknown node '" + n + "'");
    if (!seen.insert(n).second) problems.push_back("path: node '" + n + "' repeats");
  }
  for (size_t j = 0; j < links.size(); ++j) {
    if (!graph.has_link(links[j])) {
      problems.push_back("path: unknown link '" + links[j] + "'");
      continue;
    }
    const Link& e = graph.link(links[j]);
    if (e.from != nodes[j] || e.to != nodes[j + 1]) {
      problems.push_back("path: link '" + links[j] + "' does not join '" +
                         nodes[j] + "' to '" + nodes[j + 1] + "'");
    }
  }
  return problems;
}

ResolvedPath ResolvedPath::From(const InferencePath& path,
                                const NetworkGraph& graph) {
  std::vector<std::string> problems = path.Validate(graph);
  if (!problems.empty()) throw ConfigError(std::move(problems));
  ResolvedPath r;
  for (const std::string& n : path.nodes) r.speeds.push_back(graph.node(n).speed);
  for (const std::string& e : path.links) r.rates.push_back(graph.link(e).rate);
  return r;
}

LayerAssignment::LayerAssignment(std::vector<int> positions)
    : positions_(std::move(positions)) {
  for (size_t i = 0; i < positions_.size(); ++i) {
    if (positions_[i] < 0 || (i > 0 && positions_[i] < positions_[i - 1])) {
      throw ContractError("layer assignment: positions must be >= 0 and "
                          "non-decreasing");
    }
  }
}

LayerAssignment LayerAssignment::FromSplits(std::span<const int> splits,
                                            int num_layers) {
  for (size_t j = 0; j < splits.size(); ++j) {
    if (splits[j] < 0 || splits[j] > num_layers ||
        (j > 0 && splits[j] < splits[j - 1])) {
      throw ContractError("split tuple must be non-decreasing within [0, L]");
    }
  }
  std::vector<int> positions(num_layers);
  for (int l = 1; l <= num_layers; ++l) {
    int pos = 0;
    for (int k : splits) {
      if (k < l) ++pos;
    }
    positions[l - 1] = pos;
  }
  return LayerAssignment(std::move(positions));
}

std::vector<int> LayerAssignment::Splits(int hops) const {
  std::vector<int> splits(hops, 0);
  for (int j = 1; j <= hops; ++j) {
    int k = 0;
    for (int p : positions_) {
      if (p <= j - 1) ++k;
    }
    splits[j - 1] = k;
  }
  return splits;
}

DelayBreakdown DelayComponents(const ResolvedPath& path,
                               const LayerAssignment& f,
                               const DnnProfile& dnn) {
  if (f.num_layers() != dnn.num_layers()) {
    throw ContractError("delay: assignment covers " +
                        std::to_string(f.num_layers()) + " layers, profile has " +
                        std::to_string(dnn.num_layers()));
  }
  if (path.speeds.size() != path.rates.size() + 1) {
    throw ContractError("delay: malformed path");
  }
  DelayBreakdown d;
  for (int l = 1; l <= dnn.num_layers(); ++l) {
    const int m = f.position(l);
    if (m > path.hops()) {
      throw ContractError("delay: layer " + std::to_string(l) +
                          " placed beyond the path's last node");
    }
    d.compute += dnn.workload(l) / path.speeds[m];
  }
  const std::vector<int> splits = f.Splits(path.hops());
  for (int j = 0; j < path.hops(); ++j) {
    d.transmission += dnn.size_at(splits[j]) / path.rates[j];
  }
  return d;
}

double Delay(const InferencePath& path, const LayerAssignment& f,
             const DnnProfile& dnn, const NetworkGraph& graph) {
  return DelayComponents(ResolvedPath::From(path, graph), f, dnn).total();
}

std::vector<LayerAssignment> EnumerateAssignments(
    int hops, const DnnProfile& dnn,
    std::optional<std::span<const int>> candidate_splits) {
  if (hops < 0) throw ContractError("enumerate: negative hop count");
  const int num_layers = dnn.num_layers();
  std::vector<int> allowed;
  if (candidate_splits) {
    std::set<int> values{0, num_layers};
    for (int k : *candidate_splits) {
      if (k < 1 || k >= num_layers) {
        throw ContractError("enumerate: candidate split " + std::to_string(k) +
                            " outside [1, L-1]");
      }
      values.insert(k);
    }
    allowed.assign(values.begin(), values.end());
  } else {
    for (int k = 0; k <= num_layers; ++k) allowed.push_back(k);
  }

  std::vector<LayerAssignment> out;
  std::vector<int> splits(hops);
  std::function<void(int, size_t)> fill = [&](int j, size_t from) {
    if (j == hops) {
      out.push_back(LayerAssignment::FromSplits(splits, num_layers));
      return;
    }
    for (size_t i = from; i < allowed.size(); ++i) {
      splits[j] = allowed[i];
      fill(j + 1, i);
    }
  };
  fill(0, 0);
  return out;
}

std::vector<int> PruneSplittingPoints(const DnnProfile& dnn) {
  // A cut at l is dropped when a strictly smaller size exists both before and
  // after it. When s_L is the smallest size this is the running-minimum scan.
  const int L = dnn.num_layers();
  std::vector<double> suffix_min(L + 1, std::numeric_limits<double>::infinity());
  for (int l = L - 1; l >= 0; --l) {
    suffix_min[l] = std::min(suffix_min[l + 1], dnn.size_at(l + 1));
  }
  std::vector<int> kept;
  double prefix_min = dnn.size_at(0);
  for (int l = 1; l < L; ++l) {
    const double s = dnn.size_at(l);
    if (!(prefix_min < s && suffix_min[l] < s)) kept.push_back(l);
    prefix_min = std::min(prefix_min, s);
  }
  return kept;
}

std::string_view DegeneracyName(Degeneracy d) {
  switch (d) {
    case Degeneracy::kAllOnDestination:
      return "all_on_destination";
    case Degeneracy::kAllOnSource:
      return "all_on_source";
    case Degeneracy::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Degeneracy DegenerateAssignmentCheck(const ResolvedPath& path,
                                     const DnnProfile& dnn) {
  if (path.hops() < 1) throw ContractError("degeneracy check needs >= 1 link");
  double link_min = std::numeric_limits<double>::infinity();
  double link_max = -std::numeric_limits<double>::infinity();
  for (int j = 1; j <= path.hops(); ++j) {
    const double gain =
        path.rates[j - 1] * (1.0 / path.speeds[j - 1] - 1.0 / path.speeds[j]);
    link_min = std::min(link_min, gain);
    link_max = std::max(link_max, gain);
  }
  double layer_min = std::numeric_limits<double>::infinity();
  double layer_max = -std::numeric_limits<double>::infinity();
  for (int l = 1; l <= dnn.num_layers(); ++l) {
    const double shrink = (dnn.size_at(l - 1) - dnn.size_at(l)) / dnn.workload(l);
    layer_min = std::min(layer_min, shrink);
    layer_max = std::max(layer_max, shrink);
  }
  if (link_min > layer_max) return Degeneracy::kAllOnDestination;
  if (link_max < layer_min) return Degeneracy::kAllOnSource;
  return Degeneracy::kInconclusive;
}

Degeneracy DegenerateAssignmentCheck(const InferencePath& path,
                                     const DnnProfile& dnn,
                                     const NetworkGraph& graph) {
  return DegenerateAssignmentCheck(ResolvedPath::From(path, graph), dnn);
}

std::optional<InferencePath> DijkstraTransmissionPath(
    const NetworkGraph& graph, const std::string& source,
    const std::string& destination) {
  if (!graph.has_node(source) || !graph.has_node(destination)) return std::nullopt;
  const auto& nodes = graph.nodes();
  std::map<std::string, int> index;
  for (size_t i = 0; i < nodes.size(); ++i) index[nodes[i].id] = static_cast<int>(i);

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(nodes.size(), inf);
  std::vector<int> via(nodes.size(), -1);  // link index into graph.links()
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[index[source]] = 0.0;
  queue.emplace(0.0, index[source]);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    const auto& links = graph.links();
    for (size_t i = 0; i < links.size(); ++i) {
      if (index[links[i].from] != v) continue;
      const int w = index[links[i].to];
      const double nd = d + 1.0 / links[i].rate;
      if (nd < dist[w]) {
        dist[w] = nd;
        via[w] = static_cast<int>(i);
        queue.emplace(nd, w);
      }
    }
  }
  const int target = index[destination];
  if (dist[target] == inf) return std::nullopt;

  InferencePath path;
  for (int v = target; v != index[source];) {
    const Link& e = graph.links()[via[v]];
    path.nodes.push_back(nodes[v].id);
    path.links.push_back(e.id);
    v = index[e.from];
  }
  path.nodes.push_back(source);
  std::reverse(path.nodes.begin(), path.nodes.end());
  std::reverse(path.links.begin(), path.links.end());
  return path;
}

std::vector<double> RawLoadVector(int hops, const LayerAssignment& f,
                                  const DnnProfile& dnn) {
  std::vector<double> v(2 * hops + 1, 0.0);
  for (int l = 1; l <= dnn.num_layers(); ++l) {
    const int m = f.position(l);
    if (m > hops) throw ContractError("features: layer beyond the path");
    v[m] += dnn.workload(l);
  }
  const std::vector<int> splits = f.Splits(hops);
  for (int j = 0; j < hops; ++j) v[hops + 1 + j] = dnn.size_at(splits[j]);
  return v;
}

int ArmIdFromSplits(std::span<const int> splits, int num_layers) {
  int id = 0;
  for (int k : splits) {
    if (k < 0 || k > num_layers) throw ContractError("arm id: split out of range");
    id = id * (num_layers + 1) + k;
  }
  return id;
}

Eigen::VectorXd ArmFeatureValues(int hops, const LayerAssignment& f,
                                 const DnnProfile& dnn,
                                 const FeatureScaling& scaling) {
  const std::vector<double> raw = RawLoadVector(hops, f, dnn);
  Eigen::VectorXd x(raw.size() + 1);
  x[0] = scaling.bias;
  for (int m = 0; m <= hops; ++m) {
    x[1 + m] = raw[m] / (scaling.workload_unit * scaling.kappa);
  }
  for (int j = 0; j < hops; ++j) {
    x[hops + 2 + j] = raw[hops + 1 + j] / (scaling.data_unit * scaling.kappa);
  }
  return x;
}

Arm ArmFeatures(const ResolvedPath& path, const LayerAssignment& f,
                const DnnProfile& dnn, const FeatureScaling& scaling) {
  const int hops = path.hops();
  return Arm{ArmIdFromSplits(f.Splits(hops), dnn.num_layers()),
             FeatureVector(ArmFeatureValues(hops, f, dnn, scaling))};
}

GroupParameter ImpliedTheta(const ResolvedPath& path, double deadline,
                            const FeatureScaling& scaling) {
  const int hops = path.hops();
  Eigen::VectorXd theta(2 * hops + 2);
  theta[0] = deadline / scaling.bias;
  for (int m = 0; m <= hops; ++m) {
    theta[1 + m] = -scaling.kappa * scaling.workload_unit / path.speeds[m];
  }
  for (int j = 0; j < hops; ++j) {
    theta[hops + 2 + j] = -scaling.kappa * scaling.data_unit / path.rates[j];
  }
  return GroupParameter(std::move(theta));
}

double SwitchingCost(GroupIndex now, std::optional<GroupIndex> previous,
                     double tau) {
  if (!previous || *previous != now) return tau;
  return 0.0;
}

namespace {

double UnitNorm(const std::vector<double>& raw, int hops, double w, double s) {
  double sq = 0.0;
  for (int m = 0; m <= hops; ++m) sq += (raw[m] / w) * (raw[m] / w);
  for (int j = 0; j < hops; ++j) {
    const double u = raw[hops + 1 + j] / s;
    sq += u * u;
  }
  return std::sqrt(sq);
}

}  // namespace

EdgeScenario::EdgeScenario(ScenarioSpec spec, double noise_amplitude)
    : spec_(std::move(spec)) {
  std::vector<std::string> problems;
  if (spec_.paths.empty()) problems.push_back("scenario: no paths");
  if (spec_.profiles.empty()) problems.push_back("scenario: no DNN profiles");
  for (const auto& [name, d] : spec_.profile_deadlines) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      problems.push_back("scenario: deadline of '" + name + "' must be > 0");
    }
  }
  if (!(spec_.deadline > 0.0) || !std::isfinite(spec_.deadline)) {
    problems.push_back("scenario: deadline must be > 0");
  }
  if (!(spec_.tau >= 0.0) || !std::isfinite(spec_.tau)) {
    problems.push_back("scenario: tau must be >= 0");
  }
  if (!(spec_.bias > 0.0 && spec_.bias < 1.0)) {
    problems.push_back("scenario: bias must lie in (0, 1)");
  }
  if (!(spec_.workload_unit > 0.0) || !(spec_.data_unit > 0.0)) {
    problems.push_back("scenario: feature units must be > 0");
  }
  std::set<std::string> profile_names;
  for (const DnnProfile& p : spec_.profiles) {
    if (!profile_names.insert(p.name()).second) {
      problems.push_back("scenario: duplicate profile '" + p.name() + "'");
    }
  }
  for (const auto& [name, d] : spec_.profile_deadlines) {
    if (!profile_names.count(name)) {
      problems.push_back("scenario: deadline given for unknown profile '" + name + "'");
    }
  }
  for (size_t g = 0; g < spec_.paths.size(); ++g) {
    const InferencePath& path = spec_.paths[g];
    for (const std::string& p : path.Validate(spec_.graph)) {
      problems.push_back("group " + std::to_string(g + 1) + ": " + p);
    }
    if (path.hops() < 1) {
      problems.push_back("group " + std::to_string(g + 1) + ": needs >= 1 link");
    }
    if (!path.nodes.empty() && !spec_.paths.front().nodes.empty() &&
        path.nodes.front() != spec_.paths.front().nodes.front()) {
      problems.push_back("group " + std::to_string(g + 1) +
                         ": paths must share one source node");
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));

  const int num_groups = static_cast<int>(spec_.paths.size());
  const int num_profiles = static_cast<int>(spec_.profiles.size());
  for (const InferencePath& p : spec_.paths) {
    resolved_.push_back(ResolvedPath::From(p, spec_.graph));
    dims_.push_back(2 * p.hops() + 2);
  }

  // Enumerate every arm first; kappa depends on all of them.
  std::vector<std::vector<std::vector<LayerAssignment>>> assignments(num_profiles);
  double max_norm = 0.0;
  for (int k = 0; k < num_profiles; ++k) {
    const DnnProfile& dnn = spec_.profiles[k];
    std::vector<int> cand;
    if (spec_.prune) {
      cand = PruneSplittingPoints(dnn);
    } else {
      for (int l = 1; l < dnn.num_layers(); ++l) cand.push_back(l);
    }
    candidates_.push_back(cand);
    for (int g = 0; g < num_groups; ++g) {
      const int hops = resolved_[g].hops();
      assignments[k].push_back(
          EnumerateAssignments(hops, dnn, std::span<const int>(cand)));
      for (const LayerAssignment& f : assignments[k].back()) {
        max_norm = std::max(
            max_norm, UnitNorm(RawLoadVector(hops, f, dnn), hops,
                               spec_.workload_unit, spec_.data_unit));
      }
    }
  }
  scaling_.workload_unit = spec_.workload_unit;
  scaling_.data_unit = spec_.data_unit;
  scaling_.bias = spec_.bias;
  scaling_.kappa = max_norm / std::sqrt(1.0 - spec_.bias * spec_.bias);

  double max_deadline = 0.0;
  for (const DnnProfile& dnn : spec_.profiles) {
    auto it = spec_.profile_deadlines.find(dnn.name());
    deadlines_.push_back(it == spec_.profile_deadlines.end() ? spec_.deadline
                                                             : it->second);
    max_deadline = std::max(max_deadline, deadlines_.back());
  }
  for (int g = 0; g < num_groups; ++g) {
    thetas_.push_back(ImpliedTheta(resolved_[g], max_deadline, scaling_));
  }

  // The on-device baseline delivers over the cheapest candidate path.
  GroupIndex delivery = 0;
  double delivery_cost = std::numeric_limits<double>::infinity();
  for (int g = 0; g < num_groups; ++g) {
    double cost = 0.0;
    for (double b : resolved_[g].rates) cost += 1.0 / b;
    if (cost < delivery_cost) {
      delivery_cost = cost;
      delivery = g;
    }
  }

  armsets_.resize(num_profiles);
  records_.resize(num_profiles);
  optimal_values_.resize(num_profiles);
  std::vector<std::string> deadline_problems;
  for (int k = 0; k < num_profiles; ++k) {
    const DnnProfile& dnn = spec_.profiles[k];
    FeatureScaling task_scaling = scaling_;
    task_scaling.bias = scaling_.bias * deadlines_[k] / max_deadline;
    double worst = 0.0;
    for (int g = 0; g < num_groups; ++g) {
      const int hops = resolved_[g].hops();
      std::vector<Arm> arms;
      std::map<int, ArmRecord> records;
      for (const LayerAssignment& f : assignments[k][g]) {
        ArmRecord rec;
        rec.splits = f.Splits(hops);
        rec.id = ArmIdFromSplits(rec.splits, dnn.num_layers());
        rec.assignment = f;
        rec.delay = DelayComponents(resolved_[g], f, dnn).total();
        worst = std::max(worst, rec.delay);
        arms.push_back(ArmFeatures(resolved_[g], f, dnn, task_scaling));
        records.emplace(rec.id, std::move(rec));
      }
      armsets_[k].emplace_back(g, std::move(arms));
      records_[k].push_back(std::move(records));
      const ArmSet& set = armsets_[k].back();
      optimal_values_[k].push_back(Dot(thetas_[g], OptimalArm(thetas_[g], set).x));
    }

    const int hops = resolved_[delivery].hops();
    const std::vector<int> on_source(hops, dnn.num_layers());
    const LayerAssignment f = LayerAssignment::FromSplits(on_source, dnn.num_layers());
    local_arms_.push_back(ArmFeatures(resolved_[delivery], f, dnn, task_scaling));
    double local = dnn.total_workload() / resolved_[delivery].speeds[0];
    if (spec_.local_delivery) local += dnn.size_at(dnn.num_layers()) * delivery_cost;
    local_delays_.push_back(local);
    worst = std::max(worst, local);
    max_delay_ = std::max(max_delay_, worst);
    if (!(deadlines_[k] - worst > noise_amplitude)) {
      deadline_problems.push_back(
          "scenario '" + spec_.name + "', profile '" + dnn.name() +
          "': deadline " + std::to_string(deadlines_[k]) +
          " s does not clear the worst delay " + std::to_string(worst) +
          " s by more than the noise amplitude " +
          std::to_string(noise_amplitude) +
          " (attacked and unattacked rewards would be indistinguishable)");
    }
  }
  if (!deadline_problems.empty()) throw ConfigError(std::move(deadline_problems));
}

int EdgeScenario::ProfileIndex(const std::string& name) const {
  for (int k = 0; k < num_profiles(); ++k) {
    if (spec_.profiles[k].name() == name) return k;
  }
  return -1;
}

const ArmRecord& EdgeScenario::arm_record(int profile, GroupIndex g,
                                          int arm_id) const {
  const auto& records = records_.at(profile).at(g);
  auto it = records.find(arm_id);
  if (it == records.end()) {
    throw ContractError("arm " + std::to_string(arm_id) + " not offered to group " +
                        std::to_string(g + 1));
  }
  return it->second;
}

double EdgeScenario::ExpectedReward(int profile,
                                    const PolicyDecision& decision) const {
  if (decision.group == kLocalGroup) {
    return deadlines_.at(profile) - local_delays_.at(profile);
  }
  if (decision.group < 0 || decision.group >= num_groups()) {
    throw ContractError("decision group out of range");
  }
  return Dot(thetas_[decision.group], decision.arm);
}

double RealizeRound(const EdgeScenario& scenario, int profile,
                    const PolicyDecision& decision, const AttackVector& attack,
                    double noise) {
  if (decision.group == kLocalGroup) {
    return scenario.deadline(profile) - scenario.local_delay(profile) + noise;
  }
  return RealizeReward(decision.group, decision.arm,
                       scenario.thetas()[decision.group], attack, noise);
}

}  // namespace edgebandit
