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

#ifndef COMMDET_GRAPH_H_
#define COMMDET_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace commdet {

using NodeId = std::int32_t;

struct Edge {
  NodeId u;
  NodeId v;
  double weight = 1.0;
};

// Sorted, duplicate-free list of node ids.
class NodeSet {
 public:
  NodeSet() = default;
  // Sorts and removes duplicates. Negative ids are rejected.
  explicit NodeSet(std::vector<NodeId> nodes);
  NodeSet(std::initializer_list<NodeId> nodes);

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  NodeId operator[](std::size_t i) const { return nodes_[i]; }
  auto begin() const { return nodes_.begin(); }
  auto end() const { return nodes_.end(); }
  bool contains(NodeId v) const;
  std::span<const NodeId> view() const { return nodes_; }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  std::vector<NodeId> nodes_;
};

// Immutable weighted undirected graph with per-node sizes.
//
// Parallel edges are summed into a single weight. A self-loop on v is stored
// separately from the adjacency lists: it contributes its full weight to the
// internal weight of any set containing v and twice to v's degree.
class Graph {
 public:
  struct Neighbor {
    NodeId node;
    double weight;
  };

  Graph() = default;

  // Builds a graph on nodes [0, n). Duplicate edges are summed. When
  // `node_sizes` is empty every node gets size 1. Sizes must be finite and
  // non-negative; weights must be finite and non-negative.
  static Graph FromEdges(NodeId n, std::span<const Edge> edges,
                         std::vector<double> node_sizes = {});

  NodeId node_count() const { return static_cast<NodeId>(node_size_.size()); }

  // Neighbours of v other than v itself, ascending by id.
  std::span<const Neighbor> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v],
            adjacency_.data() + offsets_[v + 1]};
  }
  double self_loop(NodeId v) const { return self_loop_[v]; }
  double node_size(NodeId v) const { return node_size_[v]; }
  std::span<const double> node_sizes() const { return node_size_; }

  double total_node_size() const { return total_node_size_; }
  // m: sum over unordered pairs plus self-loops.
  double total_edge_weight() const { return total_edge_weight_; }
  double max_edge_weight() const { return max_edge_weight_; }
  // Distinct unordered node pairs with an edge, self-loops included.
  std::size_t edge_count() const { return edge_count_; }
  bool is_unweighted() const;

  // Copy of this graph with replaced node sizes.
  Graph WithNodeSizes(std::vector<double> node_sizes) const;

  // Edge list (u <= v), one entry per distinct pair.
  std::vector<Edge> Edges() const;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<double> self_loop_;
  std::vector<double> node_size_;
  double total_node_size_ = 0.0;
  double total_edge_weight_ = 0.0;
  double max_edge_weight_ = 0.0;
  std::size_t edge_count_ = 0;
};

// Reads "u v" or "u v w" lines; '#' and '%' lines and blank lines are
// skipped. With `weighted` false any third column is ignored and every edge
// has weight 1. Node count is max id + 1.
Graph LoadEdgeList(std::istream& in, bool weighted);
void WriteEdgeList(std::ostream& out, const Graph& g);

// Sum of incident weights; a self-loop counts twice.
double DegreeWeight(const Graph& g, NodeId v);
std::vector<double> Degrees(const Graph& g);

// E(S, R): total weight of unordered pairs {u, v} with u in S and v in R.
// For S == R this is the internal weight E(C, C), self-loops included.
double EdgeWeightBetween(const Graph& g, const NodeSet& s, const NodeSet& r);

struct Subgraph {
  Graph graph;
  std::vector<NodeId> to_parent;  // subgraph id -> parent id
};

Subgraph InducedSubgraph(const Graph& g, const NodeSet& s);

// Components ordered by smallest member.
std::vector<NodeSet> ConnectedComponents(const Graph& g);
// Components of the subgraph induced by `s`, in parent ids.
std::vector<NodeSet> ConnectedComponents(const Graph& g, const NodeSet& s);

}  // namespace commdet

#endif  // COMMDET_GRAPH_H_
