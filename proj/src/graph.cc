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

#include "commdet/graph.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "commdet/errors.h"

namespace commdet {

NodeSet::NodeSet(std::vector<NodeId> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  if (!nodes_.empty() && nodes_.front() < 0) {
    throw ValidationError("NodeSet: negative node id");
  }
}

NodeSet::NodeSet(std::initializer_list<NodeId> nodes)
    : NodeSet(std::vector<NodeId>(nodes)) {}

bool NodeSet::contains(NodeId v) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), v);
}

Graph Graph::FromEdges(NodeId n, std::span<const Edge> edges,
                       std::vector<double> node_sizes) {
  if (n < 0) throw ValidationError("Graph: negative node count");
  if (node_sizes.empty()) node_sizes.assign(n, 1.0);
  if (static_cast<NodeId>(node_sizes.size()) != n) {
    throw ValidationError("Graph: node_sizes length differs from node count");
  }
  Graph g;
  g.node_size_ = std::move(node_sizes);
  for (double s : g.node_size_) {
    if (!std::isfinite(s) || s < 0.0) {
      throw ValidationError("Graph: node sizes must be finite and >= 0");
    }
    g.total_node_size_ += s;
  }
  g.self_loop_.assign(n, 0.0);

  // Sort half-edges (u, v) in both directions, then merge duplicates.
  std::vector<Edge> directed;
  directed.reserve(2 * edges.size());
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw ValidationError("Graph: edge endpoint out of range");
    }
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw ValidationError("Graph: edge weights must be finite and >= 0");
    }
    if (e.u == e.v) {
      g.self_loop_[e.u] += e.weight;
      continue;
    }
    directed.push_back(e);
    directed.push_back({e.v, e.u, e.weight});
  }
  std::sort(directed.begin(), directed.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  g.adjacency_.reserve(directed.size());
  for (std::size_t i = 0; i < directed.size();) {
    std::size_t j = i;
    double w = 0.0;
    while (j < directed.size() && directed[j].u == directed[i].u &&
           directed[j].v == directed[i].v) {
      w += directed[j].weight;
      ++j;
    }
    g.adjacency_.push_back({directed[i].v, w});
    ++g.offsets_[directed[i].u + 1];
    if (directed[i].u < directed[i].v) {
      g.total_edge_weight_ += w;
      g.max_edge_weight_ = std::max(g.max_edge_weight_, w);
      ++g.edge_count_;
    }
    i = j;
  }
  for (NodeId v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  std::vector<bool> has_loop(n, false);
  for (const Edge& e : edges) {
    if (e.u == e.v) has_loop[e.u] = true;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!has_loop[v]) continue;
    g.total_edge_weight_ += g.self_loop_[v];
    g.max_edge_weight_ = std::max(g.max_edge_weight_, g.self_loop_[v]);
    ++g.edge_count_;
  }
  return g;
}

bool Graph::is_unweighted() const {
  for (const Neighbor& nb : adjacency_) {
    if (nb.weight != 1.0) return false;
  }
  for (double w : self_loop_) {
    if (w != 0.0 && w != 1.0) return false;
  }
  return true;
}

Graph Graph::WithNodeSizes(std::vector<double> node_sizes) const {
  if (node_sizes.size() != node_size_.size()) {
    throw ValidationError("Graph: node_sizes length differs from node count");
  }
  Graph g = *this;
  g.node_size_ = std::move(node_sizes);
  g.total_node_size_ = 0.0;
  for (double s : g.node_size_) {
    if (!std::isfinite(s) || s < 0.0) {
      throw ValidationError("Graph: node sizes must be finite and >= 0");
    }
    g.total_node_size_ += s;
  }
  return g;
}

std::vector<Edge> Graph::Edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < node_count(); ++u) {
    if (self_loop_[u] > 0.0) out.push_back({u, u, self_loop_[u]});
    for (const Neighbor& nb : neighbors(u)) {
      if (u < nb.node) out.push_back({u, nb.node, nb.weight});
    }
  }
  return out;
}

Graph LoadEdgeList(std::istream& in, bool weighted) {
  std::vector<Edge> edges;
  NodeId max_id = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '%') continue;
    std::istringstream fields(line);
    long long u = 0;
    long long v = 0;
    if (!(fields >> u >> v)) {
      throw ParseError(line_no, "expected \"u v\" or \"u v w\"");
    }
    if (u < 0 || v < 0) throw ParseError(line_no, "negative node id");
    if (u > std::numeric_limits<NodeId>::max() - 1 ||
        v > std::numeric_limits<NodeId>::max() - 1) {
      throw ParseError(line_no, "node id too large");
    }
    double w = 1.0;
    if (weighted) {
      std::string token;
      if (fields >> token) {
        try {
          std::size_t used = 0;
          w = std::stod(token, &used);
          if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
          throw ParseError(line_no, "malformed weight '" + token + "'");
        }
        if (!std::isfinite(w)) throw ParseError(line_no, "non-finite weight");
        if (w < 0.0) {
          throw ValidationError("line " + std::to_string(line_no) +
                                ": negative edge weight");
        }
      }
      if (fields >> token) throw ParseError(line_no, "trailing fields");
    }
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
    max_id = std::max({max_id, static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }
  return Graph::FromEdges(max_id + 1, edges);
}

void WriteEdgeList(std::ostream& out, const Graph& g) {
  out.precision(17);
  out << "# nodes " << g.node_count() << " edges " << g.edge_count() << '\n';
  for (const Edge& e : g.Edges()) {
    out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
  }
}

double DegreeWeight(const Graph& g, NodeId v) {
  if (v < 0 || v >= g.node_count()) {
    throw ValidationError("DegreeWeight: node id out of range");
  }
  double k = 2.0 * g.self_loop(v);
  for (const Graph::Neighbor& nb : g.neighbors(v)) k += nb.weight;
  return k;
}

std::vector<double> Degrees(const Graph& g) {
  std::vector<double> k(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) k[v] = DegreeWeight(g, v);
  return k;
}

namespace {

void CheckIds(const Graph& g, const NodeSet& s, const char* who) {
  if (!s.empty() && s[s.size() - 1] >= g.node_count()) {
    throw ValidationError(std::string(who) + ": node id out of range");
  }
}

}  // namespace

double EdgeWeightBetween(const Graph& g, const NodeSet& s, const NodeSet& r) {
  CheckIds(g, s, "EdgeWeightBetween");
  CheckIds(g, r, "EdgeWeightBetween");
  std::vector<char> in_s(g.node_count(), 0);
  std::vector<char> in_r(g.node_count(), 0);
  for (NodeId v : s) in_s[v] = 1;
  for (NodeId v : r) in_r[v] = 1;
  double total = 0.0;
  for (NodeId u : s) {
    if (in_r[u]) total += g.self_loop(u);
    for (const Graph::Neighbor& nb : g.neighbors(u)) {
      if (!in_r[nb.node]) continue;
      // Pairs inside S ∩ R are seen from both endpoints.
      const bool both = in_r[u] && in_s[nb.node];
      total += both ? 0.5 * nb.weight : nb.weight;
    }
  }
  return total;
}

Subgraph InducedSubgraph(const Graph& g, const NodeSet& s) {
  if (s.empty()) throw ValidationError("InducedSubgraph: empty node set");
  CheckIds(g, s, "InducedSubgraph");
  std::vector<NodeId> local(g.node_count(), -1);
  Subgraph sub;
  sub.to_parent.assign(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i) local[s[i]] = static_cast<NodeId>(i);
  std::vector<Edge> edges;
  std::vector<double> sizes;
  sizes.reserve(s.size());
  for (NodeId u : s) {
    sizes.push_back(g.node_size(u));
    if (g.self_loop(u) > 0.0) edges.push_back({local[u], local[u], g.self_loop(u)});
    for (const Graph::Neighbor& nb : g.neighbors(u)) {
      if (u < nb.node && local[nb.node] >= 0) {
        edges.push_back({local[u], local[nb.node], nb.weight});
      }
    }
  }
  sub.graph = Graph::FromEdges(static_cast<NodeId>(s.size()), edges,
                               std::move(sizes));
  return sub;
}

std::vector<NodeSet> ConnectedComponents(const Graph& g) {
  std::vector<NodeId> all(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) all[v] = v;
  return ConnectedComponents(g, NodeSet(std::move(all)));
}

std::vector<NodeSet> ConnectedComponents(const Graph& g, const NodeSet& s) {
  CheckIds(g, s, "ConnectedComponents");
  // 0 = outside s, 1 = unvisited member, 2 = visited.
  std::vector<char> state(g.node_count(), 0);
  for (NodeId v : s) state[v] = 1;
  std::vector<NodeSet> components;
  std::vector<NodeId> stack;
  for (NodeId root : s) {
    if (state[root] != 1) continue;
    std::vector<NodeId> members{root};
    state[root] = 2;
    stack.push_back(root);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (const Graph::Neighbor& nb : g.neighbors(u)) {
        if (state[nb.node] != 1) continue;
        state[nb.node] = 2;
        members.push_back(nb.node);
        stack.push_back(nb.node);
      }
    }
    components.emplace_back(std::move(members));
  }
  return components;
}

}  // namespace commdet
