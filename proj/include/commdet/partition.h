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

#ifndef COMMDET_PARTITION_H_
#define COMMDET_PARTITION_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "commdet/graph.h"

namespace commdet {

using CommunityId = std::int32_t;

// Move target meaning "a fresh empty community".
inline constexpr CommunityId kNewCommunity = -1;

// Assignment of a graph's nodes to communities with cached per-community
// aggregates: total node size, internal weight E(C, C) and member count.
//
// Community ids lie in [0, node_count()] and are recycled. At least one id is
// always empty, so moving any node to a new community never allocates.
// The partition keeps a pointer to its graph, which must outlive it.
class Partition {
 public:
  // Singleton partition of `g`.
  explicit Partition(const Graph& g);
  // Arbitrary non-negative labels; relabelled by smallest member.
  static Partition FromLabels(const Graph& g, std::span<const std::int64_t> labels);

  const Graph& graph() const { return *graph_; }
  NodeId node_count() const { return static_cast<NodeId>(community_.size()); }
  CommunityId capacity() const { return static_cast<CommunityId>(size_sum_.size()); }

  CommunityId community_of(NodeId v) const { return community_[v]; }
  double size_sum(CommunityId c) const { return size_sum_[c]; }
  double internal_weight(CommunityId c) const { return internal_weight_[c]; }
  NodeId member_count(CommunityId c) const { return member_count_[c]; }
  std::size_t community_count() const { return community_count_; }

  // Non-empty community ids, ascending.
  std::vector<CommunityId> communities() const;
  // Members per community id (empty vectors for unused ids).
  std::vector<std::vector<NodeId>> MembersByCommunity() const;
  std::vector<NodeSet> CommunitySets() const;
  NodeSet Members(CommunityId c) const;

  // An id of an empty community (the ∅ move target).
  CommunityId EmptyCommunity() const { return free_.back(); }

  // Moves v to `target` (or to a fresh community for kNewCommunity) and
  // updates the aggregates in O(deg v).
  void MoveNode(NodeId v, CommunityId target);

  // Like MoveNode when the caller already knows the weight between v and its
  // old community (v excluded) and between v and the target.
  void MoveNode(NodeId v, CommunityId target, double weight_to_old,
                double weight_to_target);

  // Weight between v and the members of c other than v.
  double WeightToCommunity(NodeId v, CommunityId c) const;

  std::vector<CommunityId> labels() const { return community_; }

  // Recomputes all aggregates from scratch and compares with the cache.
  bool AggregatesConsistent(double tolerance = 1e-9) const;

 private:
  void CheckTarget(CommunityId target) const;

  const Graph* graph_;
  std::vector<CommunityId> community_;
  std::vector<double> size_sum_;
  std::vector<double> internal_weight_;
  std::vector<NodeId> member_count_;
  std::vector<CommunityId> free_;
  std::size_t community_count_ = 0;
};

// Labels renumbered in order of first appearance, i.e. by smallest member.
std::vector<CommunityId> CanonicalForm(const Partition& p);
std::vector<CommunityId> CanonicalForm(std::span<const CommunityId> labels);

bool SamePartition(const Partition& a, const Partition& b);

// One line per node: "node_id<TAB>community_id", canonical labels.
void WritePartition(std::ostream& out, const Partition& p);
// Reads the format above; every node of `g` must be listed exactly once.
Partition ReadPartition(std::istream& in, const Graph& g);

// Result of contracting each community into one node.
struct Aggregation {
  Graph graph;
  // Community id -> aggregate node, -1 for unused ids.
  std::vector<NodeId> node_of_community;
  // Node of the input graph -> aggregate node.
  std::vector<NodeId> node_of_member;
};

// Aggregate nodes are numbered by smallest member. Node sizes add up, edges
// between communities are summed and internal weight becomes a self-loop.
Aggregation Aggregate(const Partition& p);

// Partitions produced at each aggregation level of one algorithm run.
struct HierarchyLevel {
  std::shared_ptr<const Graph> graph;
  Partition partition;
  // Node of this level -> node of the next level; empty on the top level.
  std::vector<NodeId> parent;
};

class HierarchicalPartition {
 public:
  explicit HierarchicalPartition(const Graph& base);

  const Graph& base() const { return *levels_.front().graph; }
  const std::vector<HierarchyLevel>& levels() const { return levels_; }
  std::size_t depth() const { return levels_.size(); }

  // Replaces the partition stored for the top level.
  void SetTopPartition(Partition p);
  // Adds a level above the current top. `parent` maps current top nodes to
  // nodes of `graph`.
  void Push(std::shared_ptr<const Graph> graph, std::vector<NodeId> parent,
            Partition p);

 private:
  std::vector<HierarchyLevel> levels_;
};

// Base-graph partition in which every base node joins the community of its
// top-level ancestor.
Partition Flatten(const HierarchicalPartition& h);

}  // namespace commdet

#endif  // COMMDET_PARTITION_H_
