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

#ifndef COMMDET_LEIDEN_H_
#define COMMDET_LEIDEN_H_

#include <cstdint>
#include <deque>
#include <utility>
#include <vector>

#include "commdet/graph.h"
#include "commdet/iteration.h"
#include "commdet/partition.h"
#include "commdet/quality.h"

namespace commdet {

inline constexpr double kDefaultTheta = 0.01;

struct LeidenConfig {
  QualityConfig quality;
  double theta = kDefaultTheta;
  std::uint64_t seed = 0;
  // Maximum number of aggregation levels; 0 means unlimited.
  int max_levels = 0;
};

// Throws for theta <= 0; returns false when theta lies outside the range in
// which the algorithm is known to behave well ([0.0005, 0.1]).
bool CheckTheta(double theta);

// FIFO of node ids without duplicates.
class VisitQueue {
 public:
  explicit VisitQueue(NodeId n) : queued_(n, 0) {}

  // Returns false if v is already queued.
  bool Push(NodeId v);
  NodeId Pop();
  bool empty() const { return queue_.empty(); }
  std::size_t size() const { return queue_.size(); }
  bool contains(NodeId v) const { return queued_[v] != 0; }

 private:
  std::deque<NodeId> queue_;
  std::vector<char> queued_;
};

// Binary merge tree over base nodes. Ids below leaf_count() are leaves; every
// merge creates a new internal node. Each internal node records a merge that
// passed the refinement gates, so a community's tree shows that it is
// gamma-connected.
class MergeForest {
 public:
  explicit MergeForest(NodeId leaf_count) : leaf_count_(leaf_count) {}

  NodeId leaf_count() const { return leaf_count_; }
  std::int64_t size() const {
    return leaf_count_ + static_cast<std::int64_t>(children_.size());
  }
  bool is_leaf(std::int64_t id) const { return id < leaf_count_; }
  const std::pair<std::int64_t, std::int64_t>& children(std::int64_t id) const {
    return children_[id - leaf_count_];
  }
  std::int64_t Merge(std::int64_t left, std::int64_t right);
  // Base nodes below `id`, ascending.
  std::vector<NodeId> Leaves(std::int64_t id) const;

 private:
  NodeId leaf_count_;
  std::vector<std::pair<std::int64_t, std::int64_t>> children_;
};

struct LeidenResult : IterationResult {
  MergeForest forest;
  // Tree of each final community (indexed by canonical label), or empty when
  // the run stopped before every community became a single node.
  std::vector<std::int64_t> community_tree;
};

// Queue-based local moving. Every node is queued once in random order; after
// a move the neighbours outside the new community are queued again.
bool MoveNodesFast(Partition& p, const QualityConfig& q, Rng& rng,
                   RunStats* stats = nullptr);

// Singleton partition refined by randomized merges inside every community of
// `p`. `tree_of_node` (optional) maps nodes to merge-forest ids; merges are
// recorded in `forest` and the returned vector maps refined community ids to
// tree ids.
Partition RefinePartition(const Partition& p, const QualityConfig& q,
                          double theta, Rng& rng, RunStats* stats = nullptr,
                          MergeForest* forest = nullptr,
                          const std::vector<std::int64_t>* tree_of_node = nullptr,
                          std::vector<std::int64_t>* tree_of_community = nullptr);

// Merges nodes of subset `s` (one community of the unrefined partition) in
// `refined`, which must contain only singletons on `s`.
void MergeNodesSubset(Partition& refined, const NodeSet& s,
                      const QualityConfig& q, double theta, Rng& rng,
                      RunStats* stats = nullptr, MergeForest* forest = nullptr,
                      std::vector<std::int64_t>* tree_of_community = nullptr);

// Partition of the aggregate nodes of `agg` (built from a refinement of `p`)
// in which each aggregate node joins the `p` community containing it.
Partition LiftPartition(const Partition& p, const Aggregation& agg,
                        const Graph& aggregate_graph);

LeidenResult LeidenIteration(const Graph& g, const Partition& p0,
                             const LeidenConfig& cfg, Rng& rng);
// Same with a fresh generator seeded from cfg.seed.
LeidenResult LeidenIteration(const Graph& g, const Partition& p0,
                             const LeidenConfig& cfg);

}  // namespace commdet

#endif  // COMMDET_LEIDEN_H_
