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

#ifndef EDGEBANDIT_EDGE_ENV_H_
#define EDGEBANDIT_EDGE_ENV_H_

// Collaborative edge inference: a chain-structured DNN is split across the
// nodes of one network path. Each candidate path is a bandit group and each
// layer assignment on it an arm whose features make the reward
// D - delay exactly linear in an unknown per-path parameter.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgebandit/model.h"
#include "edgebandit/policies.h"

namespace edgebandit {

struct DnnLayer {
  double workload = 0.0;     // c_l, MAC
  double output_size = 0.0;  // s_l, bits
};

// Linear chain of layers. size_at(0) is the raw input s_0; size_at(l) the
// output of layer l. Layers are 1-based in the accessors.
class DnnProfile {
 public:
  DnnProfile(std::string name, double input_size, std::vector<DnnLayer> layers);

  const std::string& name() const { return name_; }
  int num_layers() const { return static_cast<int>(layers_.size()); }
  double input_size() const { return input_size_; }
  double workload(int l) const { return layers_.at(l - 1).workload; }
  double size_at(int l) const;
  double total_workload() const;
  const std::vector<DnnLayer>& layers() const { return layers_; }

 private:
  std::string name_;
  double input_size_;
  std::vector<DnnLayer> layers_;
};

struct Node {
  std::string id;
  double speed = 0.0;  // MAC/s
};

struct Link {
  std::string id;
  std::string from;
  std::string to;
  double rate = 0.0;  // bits/s
};

// Directed acyclic multigraph of compute nodes and links.
class NetworkGraph {
 public:
  NetworkGraph(std::vector<Node> nodes, std::vector<Link> links);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }
  const Node& node(const std::string& id) const;
  const Link& link(const std::string& id) const;
  bool has_node(const std::string& id) const { return node_index_.count(id) > 0; }
  bool has_link(const std::string& id) const { return link_index_.count(id) > 0; }

 private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::map<std::string, int> node_index_;
  std::map<std::string, int> link_index_;
};

// Nodes v_0 (source) .. v_M joined by links e_1 .. e_M.
struct InferencePath {
  std::vector<std::string> nodes;
  std::vector<std::string> links;

  int hops() const { return static_cast<int>(links.size()); }
  // Diagnostics against `graph`; empty when the path is well formed.
  std::vector<std::string> Validate(const NetworkGraph& graph) const;
};

// A path reduced to the numbers the delay model needs.
struct ResolvedPath {
  std::vector<double> speeds;  // p_{v_0} .. p_{v_M}
  std::vector<double> rates;   // b_1 .. b_M

  static ResolvedPath From(const InferencePath& path, const NetworkGraph& graph);
  int hops() const { return static_cast<int>(rates.size()); }
};

// Node position (0..M) of every layer, non-decreasing along the chain.
class LayerAssignment {
 public:
  explicit LayerAssignment(std::vector<int> positions);

  // splits[j-1] = number of layers computed upstream of link j, i.e. the
  // layer whose output crosses link j (0 = raw input). Non-decreasing.
  static LayerAssignment FromSplits(std::span<const int> splits, int num_layers);

  int num_layers() const { return static_cast<int>(positions_.size()); }
  int position(int l) const { return positions_.at(l - 1); }  // 1-based layer
  const std::vector<int>& positions() const { return positions_; }
  std::vector<int> Splits(int hops) const;

 private:
  std::vector<int> positions_;
};

struct DelayBreakdown {
  double compute = 0.0;
  double transmission = 0.0;
  double total() const { return compute + transmission; }
};

// sum_l c_l / p_{f(l)} + sum_j s_{k_j} / b_j where k_j is the last layer
// computed upstream of link j (raw input when none).
DelayBreakdown DelayComponents(const ResolvedPath& path,
                               const LayerAssignment& f,
                               const DnnProfile& dnn);
double Delay(const InferencePath& path, const LayerAssignment& f,
             const DnnProfile& dnn, const NetworkGraph& graph);

// All monotone assignments of the DNN onto a path with `hops` links. With
// candidate splits, layers between consecutive candidates move as one block.
std::vector<LayerAssignment> EnumerateAssignments(
    int hops, const DnnProfile& dnn,
    std::optional<std::span<const int>> candidate_splits = std::nullopt);

// Split indices l in 1..L-1 that can appear in an optimal assignment. A cut
// is discarded when some earlier and some later size are both strictly
// smaller; for profiles whose final output is the smallest size this keeps
// exactly the cuts with s_l <= min(s_0, ..., s_{l-1}).
std::vector<int> PruneSplittingPoints(const DnnProfile& dnn);

enum class Degeneracy { kAllOnDestination, kAllOnSource, kInconclusive };

std::string_view DegeneracyName(Degeneracy d);

// Sufficient conditions for a single-node optimum. Moving layer l across
// link j towards the destination changes the delay by
//   c_l (1/p_j - 1/p_{j-1}) + (s_{l-1} - s_l) / b_j,
// so all-on-destination is optimal when
//   min_j b_j (1/p_{j-1} - 1/p_j) > max_l (s_{l-1} - s_l) / c_l
// and all-on-source when
//   max_j b_j (1/p_{j-1} - 1/p_j) < min_l (s_{l-1} - s_l) / c_l.
Degeneracy DegenerateAssignmentCheck(const ResolvedPath& path,
                                     const DnnProfile& dnn);
Degeneracy DegenerateAssignmentCheck(const InferencePath& path,
                                     const DnnProfile& dnn,
                                     const NetworkGraph& graph);

// Path minimizing sum_j 1/b_j. nullopt when the destination is unreachable.
std::optional<InferencePath> DijkstraTransmissionPath(
    const NetworkGraph& graph, const std::string& source,
    const std::string& destination);

// Maps raw per-node workload and per-link data volume to features:
//   x = (bias, w_0/(W kappa), ..., w_M/(W kappa), u_1/(S kappa), ...)
// with W, S the workload and data units.
struct FeatureScaling {
  double workload_unit = 1.0;
  double data_unit = 1.0;
  double kappa = 1.0;
  double bias = 1.0;
};

// (w_0..w_M, u_1..u_M) in profile units, without the bias coordinate.
std::vector<double> RawLoadVector(int hops, const LayerAssignment& f,
                                  const DnnProfile& dnn);

// Mixed-radix code of the split tuple (base L + 1, first link most
// significant). Identical tuples always give identical ids.
int ArmIdFromSplits(std::span<const int> splits, int num_layers);

// Feature vector of dimension 1 + (M + 1) + M. Throws ContractError if the
// scaling leaves the vector outside the unit ball.
Arm ArmFeatures(const ResolvedPath& path, const LayerAssignment& f,
                const DnnProfile& dnn, const FeatureScaling& scaling);
// Unchecked variant used where the unit-ball invariant does not apply.
Eigen::VectorXd ArmFeatureValues(int hops, const LayerAssignment& f,
                                 const DnnProfile& dnn,
                                 const FeatureScaling& scaling);

// theta with theta^T x = deadline - delay for every arm of the path whose
// bias coordinate equals scaling.bias. A task with a shorter deadline D' sets
// its bias coordinate to scaling.bias * D' / deadline instead, which keeps the
// reward linear in the same theta.
GroupParameter ImpliedTheta(const ResolvedPath& path, double deadline,
                            const FeatureScaling& scaling);

// tau when the group changes; the first round always counts as a change.
double SwitchingCost(GroupIndex now, std::optional<GroupIndex> previous,
                     double tau);

struct ScenarioSpec {
  std::string name;
  NetworkGraph graph{{}, {}};
  std::vector<InferencePath> paths;  // one per group
  std::vector<DnnProfile> profiles;
  double deadline = 1.0;  // seconds, for profiles without their own entry
  std::map<std::string, double> profile_deadlines;
  double tau = 1.0;
  double workload_unit = 1e9;  // features count workload in GMAC
  double data_unit = 1e6;      // ... and data in Mbit
  double bias = 0.5;
  bool prune = true;
  // The on-device baseline ships its result over the cheapest candidate path.
  bool local_delivery = true;
  std::optional<std::string> source;
  std::optional<std::string> destination;
};

struct ArmRecord {
  int id = 0;
  std::vector<int> splits;
  LayerAssignment assignment{{}};
  double delay = 0.0;
};

// Immutable after construction: per (profile, group) arm sets with their
// assignments and delays, the normalization, and the implied parameters.
class EdgeScenario {
 public:
  // Throws ConfigError listing every problem, including deadlines that do
  // not clear the worst arm's delay by more than `noise_amplitude`.
  EdgeScenario(ScenarioSpec spec, double noise_amplitude);

  const ScenarioSpec& spec() const { return spec_; }
  int num_groups() const { return static_cast<int>(spec_.paths.size()); }
  int num_profiles() const { return static_cast<int>(spec_.profiles.size()); }
  const FeatureScaling& scaling() const { return scaling_; }
  double deadline(int profile) const { return deadlines_.at(profile); }
  // -1 when absent.
  int ProfileIndex(const std::string& name) const;

  const ResolvedPath& resolved(GroupIndex g) const { return resolved_[g]; }
  std::span<const int> dims() const { return dims_; }
  std::span<const ArmSet> armsets(int profile) const { return armsets_[profile]; }
  const ArmRecord& arm_record(int profile, GroupIndex g, int arm_id) const;
  std::span<const GroupParameter> thetas() const { return thetas_; }
  const std::vector<int>& candidate_splits(int profile) const {
    return candidates_[profile];
  }

  const Arm& local_arm(int profile) const { return local_arms_[profile]; }
  double local_delay(int profile) const { return local_delays_[profile]; }

  // Noise-free, unattacked reward of a decision for a task of `profile`.
  double ExpectedReward(int profile, const PolicyDecision& decision) const;
  double MaxDelay() const { return max_delay_; }
  // Per-group max expected reward for a task of `profile`.
  const std::vector<double>& optimal_values(int profile) const {
    return optimal_values_[profile];
  }

 private:
  ScenarioSpec spec_;
  FeatureScaling scaling_;
  std::vector<double> deadlines_;
  std::vector<ResolvedPath> resolved_;
  std::vector<int> dims_;
  std::vector<std::vector<int>> candidates_;
  std::vector<std::vector<ArmSet>> armsets_;
  std::vector<std::vector<std::map<int, ArmRecord>>> records_;
  std::vector<GroupParameter> thetas_;
  std::vector<Arm> local_arms_;
  std::vector<double> local_delays_;
  std::vector<std::vector<double>> optimal_values_;
  double max_delay_ = 0.0;
};

// attack(g) * (D - delay + noise); the on-device decision ignores attacks.
double RealizeRound(const EdgeScenario& scenario, int profile,
                    const PolicyDecision& decision, const AttackVector& attack,
                    double noise);

}  // namespace edgebandit

#endif  // EDGEBANDIT_EDGE_ENV_H_
