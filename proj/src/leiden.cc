// Copyright 2026 The commdet Authors.
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

#include "commdet/leiden.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "commdet/errors.h"
#include "local_move.h"

namespace commdet {
namespace {

// Refinement cap on consecutive aggregation attempts that merge nothing.
constexpr int kMaxStalledRounds = 1000;

// Scratch state for merging nodes inside subsets of one graph.
class Refiner {
 public:
  Refiner(const Graph& g, const QualityConfig& q, double theta)
      : g_(g),
        resolution_(q.resolution()),
        theta_(theta),
        mark_(g.node_count(), 0),
        internal_(g.node_count(), 0.0),
        weight_(g.node_count() + 1, 0.0),
        seen_(g.node_count() + 1, 0),
        external_(g.node_count() + 1, 0.0) {}

  void Merge(Partition& refined, std::span<const NodeId> s, Rng& rng,
             RunStats* stats, MergeForest* forest,
             std::vector<std::int64_t>* tree_of_community);

 private:
  const Graph& g_;
  double resolution_;
  double theta_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
  // E(v, S - v) per node of the current subset.
  std::vector<double> internal_;
  std::vector<double> weight_;
  std::vector<char> seen_;
  std::vector<CommunityId> touched_;
  // E(T, S - T) per refined community inside the current subset.
  std::vector<double> external_;
  std::vector<CommunityId> candidates_;
  std::vector<double> deltas_;
  std::vector<NodeId> well_connected_;
};

void Refiner::Merge(Partition& refined, std::span<const NodeId> s, Rng& rng,
                    RunStats* stats, MergeForest* forest,
                    std::vector<std::int64_t>* tree_of_community) {
  if (s.size() < 2) return;
  ++stamp_;
  double size_s = 0.0;
  for (NodeId v : s) {
    mark_[v] = stamp_;
    size_s += g_.node_size(v);
  }
  const double r = resolution_;
  well_connected_.clear();
  for (NodeId v : s) {
    if (refined.member_count(refined.community_of(v)) != 1) {
      throw InternalError("MergeNodesSubset: subset is not all singletons");
    }
    double w = 0.0;
    for (const Graph::Neighbor& nb : g_.neighbors(v)) {
      if (mark_[nb.node] == stamp_) w += nb.weight;
    }
    internal_[v] = w;
    external_[refined.community_of(v)] = w;
    const double sv = g_.node_size(v);
    if (ApproxGe(w, r * sv * (size_s - sv))) well_connected_.push_back(v);
  }
  std::shuffle(well_connected_.begin(), well_connected_.end(), rng);

  for (NodeId v : well_connected_) {
    if (stats != nullptr) ++stats->refine_visits;
    const CommunityId own = refined.community_of(v);
    if (refined.member_count(own) != 1) continue;
    touched_.clear();
    for (const Graph::Neighbor& nb : g_.neighbors(v)) {
      if (mark_[nb.node] != stamp_) continue;
      const CommunityId c = refined.community_of(nb.node);
      if (!seen_[c]) {
        seen_[c] = 1;
        touched_.push_back(c);
      }
      weight_[c] += nb.weight;
    }
    const double sv = g_.node_size(v);
    candidates_.assign(1, own);
    deltas_.assign(1, 0.0);
    double max_delta = 0.0;
    for (CommunityId c : touched_) {
      const double size_c = refined.size_sum(c);
      if (!ApproxGe(external_[c], r * size_c * (size_s - size_c))) continue;
      const double gain = weight_[c];
      const double cost = r * sv * size_c;
      if (!ApproxGe(gain, cost)) continue;
      const double delta = std::max(0.0, gain - cost);
      candidates_.push_back(c);
      deltas_.push_back(delta);
      max_delta = std::max(max_delta, delta);
    }
    CommunityId chosen = own;
    if (candidates_.size() > 1) {
      double total = 0.0;
      for (double& d : deltas_) {
        d = std::exp((d - max_delta) / theta_);
        total += d;
      }
      double x = std::uniform_real_distribution<double>(0.0, total)(rng);
      chosen = candidates_.back();
      for (std::size_t i = 0; i < candidates_.size(); ++i) {
        if (x < deltas_[i]) {
          chosen = candidates_[i];
          break;
        }
        x -= deltas_[i];
      }
    }
    if (chosen != own) {
      const double w = weight_[chosen];
      external_[chosen] += internal_[v] - 2.0 * w;
      if (forest != nullptr && tree_of_community != nullptr) {
        (*tree_of_community)[chosen] = forest->Merge(
            (*tree_of_community)[chosen], (*tree_of_community)[own]);
      }
      refined.MoveNode(v, chosen, 0.0, w);
    }
    for (CommunityId c : touched_) {
      weight_[c] = 0.0;
      seen_[c] = 0;
    }
  }
}

}  // namespace

bool CheckTheta(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw ValidationError("theta must be positive");
  }
  return theta >= 0.0005 && theta <= 0.1;
}

bool VisitQueue::Push(NodeId v) {
  if (queued_[v]) return false;
  queued_[v] = 1;
  queue_.push_back(v);
  return true;
}

NodeId VisitQueue::Pop() {
  const NodeId v = queue_.front();
  queue_.pop_front();
  queued_[v] = 0;
  return v;
}

std::int64_t MergeForest::Merge(std::int64_t left, std::int64_t right) {
  if (left < 0 || right < 0 || left >= size() || right >= size()) {
    throw InternalError("MergeForest: unknown tree id");
  }
  children_.emplace_back(left, right);
  return size() - 1;
}

std::vector<NodeId> MergeForest::Leaves(std::int64_t id) const {
  std::vector<NodeId> leaves;
  std::vector<std::int64_t> stack{id};
  while (!stack.empty()) {
    const std::int64_t t = stack.back();
    stack.pop_back();
    if (is_leaf(t)) {
      leaves.push_back(static_cast<NodeId>(t));
    } else {
      stack.push_back(children(t).first);
      stack.push_back(children(t).second);
    }
  }
  std::sort(leaves.begin(), leaves.end());
  return leaves;
}

bool MoveNodesFast(Partition& p, const QualityConfig& q, Rng& rng,
                   RunStats* stats) {
  const NodeId n = p.node_count();
  const Graph& g = p.graph();
  const double r = q.resolution();
  internal::MoveEvaluator eval(p);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  VisitQueue queue(n);
  for (NodeId v : order) queue.Push(v);
  bool moved_any = false;
  while (!queue.empty()) {
    const NodeId v = queue.Pop();
    if (stats != nullptr) ++stats->node_visits;
    const internal::MoveChoice choice = eval.Best(p, r, v);
    if (!choice.moves) continue;
    p.MoveNode(v, choice.target, choice.weight_to_old, choice.weight_to_target);
    moved_any = true;
    if (stats != nullptr) ++stats->moves;
    const CommunityId c = p.community_of(v);
    for (const Graph::Neighbor& nb : g.neighbors(v)) {
      if (p.community_of(nb.node) != c) queue.Push(nb.node);
    }
  }
  return moved_any;
}

Partition RefinePartition(const Partition& p, const QualityConfig& q,
                          double theta, Rng& rng, RunStats* stats,
                          MergeForest* forest,
                          const std::vector<std::int64_t>* tree_of_node,
                          std::vector<std::int64_t>* tree_of_community) {
  const Graph& g = p.graph();
  Partition refined(g);
  if (tree_of_community != nullptr) {
    tree_of_community->assign(refined.capacity(), -1);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      (*tree_of_community)[v] = tree_of_node != nullptr ? (*tree_of_node)[v] : v;
    }
  }
  Refiner refiner(g, q, theta);
  const auto members = p.MembersByCommunity();
  for (const auto& s : members) {
    refiner.Merge(refined, s, rng, stats, forest, tree_of_community);
  }
  return refined;
}

void MergeNodesSubset(Partition& refined, const NodeSet& s,
                      const QualityConfig& q, double theta, Rng& rng,
                      RunStats* stats, MergeForest* forest,
                      std::vector<std::int64_t>* tree_of_community) {
  Refiner refiner(refined.graph(), q, theta);
  refiner.Merge(refined, s.view(), rng, stats, forest, tree_of_community);
}

Partition LiftPartition(const Partition& p, const Aggregation& agg,
                        const Graph& aggregate_graph) {
  const NodeId n = aggregate_graph.node_count();
  std::vector<std::int64_t> labels(n, -1);
  for (NodeId v = 0; v < p.node_count(); ++v) {
    const NodeId a = agg.node_of_member[v];
    const std::int64_t c = p.community_of(v);
    if (labels[a] < 0) {
      labels[a] = c;
    } else if (labels[a] != c) {
      throw InternalError("LiftPartition: refined community straddles communities");
    }
  }
  Partition lifted = Partition::FromLabels(aggregate_graph, labels);
  return lifted;
}

LeidenResult LeidenIteration(const Graph& g, const Partition& p0,
                             const LeidenConfig& cfg, Rng& rng) {
  if (&p0.graph() != &g) {
    throw ValidationError("LeidenIteration: partition of a different graph");
  }
  CheckTheta(cfg.theta);
  HierarchicalPartition h(g);
  RunStats stats;
  MergeForest forest(g.node_count());
  std::vector<std::int64_t> tree_of_node(g.node_count());
  std::iota(tree_of_node.begin(), tree_of_node.end(), 0);
  std::vector<std::int64_t> tree_of_community;

  Partition p = p0;
  bool done = false;
  int stalled = 0;
  for (int level = 0;;) {
    MoveNodesFast(p, cfg.quality, rng, &stats);
    const NodeId n = p.node_count();
    done = static_cast<NodeId>(p.community_count()) == n;
    if (done || (cfg.max_levels > 0 && level + 1 >= cfg.max_levels)) break;
    Partition refined = RefinePartition(p, cfg.quality, cfg.theta, rng, &stats,
                                        &forest, &tree_of_node,
                                        &tree_of_community);
    if (static_cast<NodeId>(refined.community_count()) == n) {
      // Nothing merged; aggregating would reproduce the same graph.
      if (++stalled > kMaxStalledRounds) {
        throw InternalError("LeidenIteration: refinement keeps failing to merge");
      }
      continue;
    }
    stalled = 0;
    Aggregation agg = Aggregate(refined);
    auto next = std::make_shared<const Graph>(std::move(agg.graph));
    Partition lifted = LiftPartition(p, agg, *next);
    std::vector<std::int64_t> next_tree(next->node_count());
    for (CommunityId c = 0; c < refined.capacity(); ++c) {
      if (agg.node_of_community[c] >= 0) {
        next_tree[agg.node_of_community[c]] = tree_of_community[c];
      }
    }
    tree_of_node = std::move(next_tree);
    h.SetTopPartition(std::move(p));
    h.Push(next, std::move(agg.node_of_member), lifted);
    p = std::move(lifted);
    ++level;
  }
  h.SetTopPartition(std::move(p));
  stats.levels = static_cast<int>(h.depth());
  Partition flat = Flatten(h);

  std::vector<std::int64_t> community_tree;
  if (done) {
    const auto& levels = h.levels();
    community_tree.assign(flat.community_count(), -1);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      NodeId x = v;
      for (std::size_t l = 0; l + 1 < levels.size(); ++l) x = levels[l].parent[x];
      community_tree[flat.community_of(v)] = tree_of_node[x];
    }
  }
  LeidenResult result{{std::move(h), std::move(flat), stats},
                      std::move(forest),
                      std::move(community_tree)};
  return result;
}

LeidenResult LeidenIteration(const Graph& g, const Partition& p0,
                             const LeidenConfig& cfg) {
  Rng rng(cfg.seed);
  return LeidenIteration(g, p0, cfg, rng);
}

}  // namespace commdet
