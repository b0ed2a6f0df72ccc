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

#include "commdet/partition.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "commdet/errors.h"

namespace commdet {

Partition::Partition(const Graph& g)
    : graph_(&g),
      community_(g.node_count()),
      size_sum_(g.node_count() + 1, 0.0),
      internal_weight_(g.node_count() + 1, 0.0),
      member_count_(g.node_count() + 1, 0),
      free_{g.node_count()},
      community_count_(g.node_count()) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    community_[v] = v;
    size_sum_[v] = g.node_size(v);
    internal_weight_[v] = g.self_loop(v);
    member_count_[v] = 1;
  }
}

Partition Partition::FromLabels(const Graph& g,
                                std::span<const std::int64_t> labels) {
  if (static_cast<NodeId>(labels.size()) != g.node_count()) {
    throw ValidationError("Partition: label count differs from node count");
  }
  std::vector<CommunityId> raw(labels.size());
  {
    std::vector<std::int64_t> sorted(labels.begin(), labels.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (!sorted.empty() && sorted.front() < 0) {
      throw ValidationError("Partition: negative community label");
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
      raw[i] = static_cast<CommunityId>(
          std::lower_bound(sorted.begin(), sorted.end(), labels[i]) -
          sorted.begin());
    }
  }
  const std::vector<CommunityId> canon = CanonicalForm(raw);
  Partition p(g);
  const NodeId n = g.node_count();
  p.size_sum_.assign(n + 1, 0.0);
  p.internal_weight_.assign(n + 1, 0.0);
  p.member_count_.assign(n + 1, 0);
  p.community_ = canon;
  for (NodeId v = 0; v < n; ++v) {
    const CommunityId c = canon[v];
    p.size_sum_[c] += g.node_size(v);
    ++p.member_count_[c];
    p.internal_weight_[c] += g.self_loop(v);
    for (const Graph::Neighbor& nb : g.neighbors(v)) {
      if (v < nb.node && canon[nb.node] == c) p.internal_weight_[c] += nb.weight;
    }
  }
  p.free_.clear();
  p.community_count_ = 0;
  for (CommunityId c = n; c >= 0; --c) {
    if (p.member_count_[c] == 0) {
      p.free_.push_back(c);
    } else {
      ++p.community_count_;
    }
  }
  return p;
}

std::vector<CommunityId> Partition::communities() const {
  std::vector<CommunityId> out;
  out.reserve(community_count_);
  for (CommunityId c = 0; c < capacity(); ++c) {
    if (member_count_[c] > 0) out.push_back(c);
  }
  return out;
}

std::vector<std::vector<NodeId>> Partition::MembersByCommunity() const {
  std::vector<std::vector<NodeId>> members(capacity());
  for (NodeId v = 0; v < node_count(); ++v) members[community_[v]].push_back(v);
  return members;
}

std::vector<NodeSet> Partition::CommunitySets() const {
  std::vector<NodeSet> sets;
  sets.reserve(community_count_);
  for (auto& m : MembersByCommunity()) {
    if (!m.empty()) sets.emplace_back(std::move(m));
  }
  std::sort(sets.begin(), sets.end(),
            [](const NodeSet& a, const NodeSet& b) { return a[0] < b[0]; });
  return sets;
}

NodeSet Partition::Members(CommunityId c) const {
  std::vector<NodeId> m;
  for (NodeId v = 0; v < node_count(); ++v) {
    if (community_[v] == c) m.push_back(v);
  }
  return NodeSet(std::move(m));
}

void Partition::CheckTarget(CommunityId target) const {
  if (target != kNewCommunity && (target < 0 || target >= capacity())) {
    throw ValidationError("Partition: invalid target community id");
  }
}

double Partition::WeightToCommunity(NodeId v, CommunityId c) const {
  double w = 0.0;
  for (const Graph::Neighbor& nb : graph_->neighbors(v)) {
    if (community_[nb.node] == c) w += nb.weight;
  }
  return w;
}

void Partition::MoveNode(NodeId v, CommunityId target) {
  if (v < 0 || v >= node_count()) {
    throw ValidationError("Partition: node id out of range");
  }
  CheckTarget(target);
  if (target == kNewCommunity) target = EmptyCommunity();
  if (target == community_[v]) return;
  MoveNode(v, target, WeightToCommunity(v, community_[v]),
           WeightToCommunity(v, target));
}

void Partition::MoveNode(NodeId v, CommunityId target, double weight_to_old,
                         double weight_to_target) {
  if (target == kNewCommunity) target = EmptyCommunity();
  const CommunityId old = community_[v];
  if (target == old) return;
  const double size = graph_->node_size(v);
  const double loop = graph_->self_loop(v);

  size_sum_[old] -= size;
  internal_weight_[old] -= loop + weight_to_old;
  if (--member_count_[old] == 0) {
    size_sum_[old] = 0.0;
    internal_weight_[old] = 0.0;
    free_.push_back(old);
    --community_count_;
  }

  if (member_count_[target] == 0) {
    if (free_.back() == target) {
      free_.pop_back();
    } else {
      free_.erase(std::find(free_.begin(), free_.end(), target));
    }
    ++community_count_;
  }
  size_sum_[target] += size;
  internal_weight_[target] += loop + weight_to_target;
  ++member_count_[target];
  community_[v] = target;
}

bool Partition::AggregatesConsistent(double tolerance) const {
  std::vector<double> size(capacity(), 0.0);
  std::vector<double> internal(capacity(), 0.0);
  std::vector<NodeId> count(capacity(), 0);
  const Graph& g = *graph_;
  for (NodeId v = 0; v < node_count(); ++v) {
    const CommunityId c = community_[v];
    size[c] += g.node_size(v);
    ++count[c];
    internal[c] += g.self_loop(v);
    for (const Graph::Neighbor& nb : g.neighbors(v)) {
      if (v < nb.node && community_[nb.node] == c) internal[c] += nb.weight;
    }
  }
  std::size_t nonempty = 0;
  for (CommunityId c = 0; c < capacity(); ++c) {
    if (count[c] != member_count_[c]) return false;
    if (std::abs(size[c] - size_sum_[c]) > tolerance) return false;
    if (std::abs(internal[c] - internal_weight_[c]) > tolerance) return false;
    if (count[c] > 0) ++nonempty;
  }
  if (nonempty != community_count_) return false;
  // Every empty id is free and vice versa.
  std::size_t empty = 0;
  for (CommunityId c : free_) {
    if (member_count_[c] != 0) return false;
    ++empty;
  }
  return empty + nonempty == static_cast<std::size_t>(capacity());
}

std::vector<CommunityId> CanonicalForm(std::span<const CommunityId> labels) {
  std::vector<CommunityId> canon(labels.size());
  std::vector<CommunityId> remap;
  CommunityId next = 0;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    const CommunityId c = labels[v];
    if (c < 0) throw ValidationError("CanonicalForm: negative label");
    if (static_cast<std::size_t>(c) >= remap.size()) remap.resize(c + 1, -1);
    if (remap[c] < 0) remap[c] = next++;
    canon[v] = remap[c];
  }
  return canon;
}

std::vector<CommunityId> CanonicalForm(const Partition& p) {
  const std::vector<CommunityId> labels = p.labels();
  return CanonicalForm(labels);
}

bool SamePartition(const Partition& a, const Partition& b) {
  return a.node_count() == b.node_count() && CanonicalForm(a) == CanonicalForm(b);
}

void WritePartition(std::ostream& out, const Partition& p) {
  const std::vector<CommunityId> canon = CanonicalForm(p);
  for (NodeId v = 0; v < p.node_count(); ++v) {
    out << v << '\t' << canon[v] << '\n';
  }
}

Partition ReadPartition(std::istream& in, const Graph& g) {
  std::vector<std::int64_t> labels(g.node_count(), -1);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long v = 0;
    long long c = 0;
    if (!(fields >> v >> c)) throw ParseError(line_no, "expected \"node community\"");
    if (v < 0 || v >= g.node_count()) throw ParseError(line_no, "node id out of range");
    if (c < 0) throw ParseError(line_no, "negative community id");
    if (labels[v] >= 0) throw ParseError(line_no, "node listed twice");
    labels[v] = c;
  }
  for (std::int64_t c : labels) {
    if (c < 0) throw ValidationError("ReadPartition: some nodes are unassigned");
  }
  return Partition::FromLabels(g, labels);
}

Aggregation Aggregate(const Partition& p) {
  const Graph& g = p.graph();
  Aggregation agg;
  agg.node_of_community.assign(p.capacity(), -1);
  agg.node_of_member.assign(g.node_count(), -1);
  NodeId next = 0;
  std::vector<double> sizes;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const CommunityId c = p.community_of(v);
    if (agg.node_of_community[c] < 0) {
      agg.node_of_community[c] = next++;
      sizes.push_back(0.0);
    }
    const NodeId a = agg.node_of_community[c];
    agg.node_of_member[v] = a;
    sizes[a] += g.node_size(v);
  }
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.Edges()) {
    edges.push_back({agg.node_of_member[e.u], agg.node_of_member[e.v], e.weight});
  }
  agg.graph = Graph::FromEdges(next, edges, std::move(sizes));
  return agg;
}

HierarchicalPartition::HierarchicalPartition(const Graph& base) {
  // Non-owning handle: the caller keeps the base graph alive.
  std::shared_ptr<const Graph> handle(std::shared_ptr<const Graph>(), &base);
  levels_.push_back({handle, Partition(base), {}});
}

void HierarchicalPartition::SetTopPartition(Partition p) {
  if (&p.graph() != levels_.back().graph.get()) {
    throw InternalError("HierarchicalPartition: partition of the wrong graph");
  }
  levels_.back().partition = std::move(p);
}

void HierarchicalPartition::Push(std::shared_ptr<const Graph> graph,
                                 std::vector<NodeId> parent, Partition p) {
  if (static_cast<NodeId>(parent.size()) != levels_.back().graph->node_count()) {
    throw InternalError("HierarchicalPartition: parent map has wrong length");
  }
  for (NodeId a : parent) {
    if (a < 0 || a >= graph->node_count()) {
      throw InternalError("HierarchicalPartition: parent id out of range");
    }
  }
  if (&p.graph() != graph.get()) {
    throw InternalError("HierarchicalPartition: partition of the wrong graph");
  }
  levels_.back().parent = std::move(parent);
  levels_.push_back({std::move(graph), std::move(p), {}});
}

Partition Flatten(const HierarchicalPartition& h) {
  const auto& levels = h.levels();
  const Graph& base = h.base();
  std::vector<NodeId> node(base.node_count());
  for (NodeId v = 0; v < base.node_count(); ++v) node[v] = v;
  for (std::size_t l = 0; l + 1 < levels.size(); ++l) {
    if (static_cast<NodeId>(levels[l].parent.size()) !=
        levels[l].graph->node_count()) {
      throw InternalError("Flatten: inconsistent hierarchy");
    }
    for (NodeId& x : node) x = levels[l].parent[x];
  }
  const Partition& top = levels.back().partition;
  std::vector<std::int64_t> labels(base.node_count());
  for (NodeId v = 0; v < base.node_count(); ++v) {
    labels[v] = top.community_of(node[v]);
  }
  return Partition::FromLabels(base, labels);
}

}  // namespace commdet
