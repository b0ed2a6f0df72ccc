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

#ifndef COMMDET_TESTS_TEST_UTIL_H_
#define COMMDET_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "commdet/graph.h"
#include "commdet/partition.h"

namespace commdet::testing {

// Edge list kept next to the graph so that oracles never read the graph's
// own bookkeeping.
struct RandomGraph {
  NodeId n = 0;
  std::vector<Edge> edges;
  std::vector<double> sizes;  // empty: all 1
  Graph graph;
};

// Erdos-Renyi G(n, p). Optional integer weights in [1, max_weight], self-loops
// with probability `loop_p`, and random node sizes in [0.5, 3].
inline RandomGraph MakeRandomGraph(std::mt19937_64& rng, NodeId n, double p,
                                   int max_weight = 1, double loop_p = 0.0,
                                   bool random_sizes = false) {
  RandomGraph r;
  r.n = n;
  std::bernoulli_distribution edge(p);
  std::bernoulli_distribution loop(loop_p);
  std::uniform_int_distribution<int> weight(1, max_weight);
  for (NodeId u = 0; u < n; ++u) {
    if (loop_p > 0.0 && loop(rng)) r.edges.push_back({u, u, double(weight(rng))});
    for (NodeId v = u + 1; v < n; ++v) {
      if (edge(rng)) r.edges.push_back({u, v, double(weight(rng))});
    }
  }
  if (random_sizes) {
    std::uniform_real_distribution<double> size(0.5, 3.0);
    for (NodeId v = 0; v < n; ++v) r.sizes.push_back(size(rng));
  }
  r.graph = Graph::FromEdges(n, r.edges, r.sizes);
  return r;
}

inline std::vector<std::int64_t> RandomLabels(std::mt19937_64& rng, NodeId n,
                                              int k) {
  std::uniform_int_distribution<int> pick(0, k - 1);
  std::vector<std::int64_t> labels(n);
  for (auto& l : labels) l = pick(rng);
  return labels;
}

// Sum over communities of [internal weight - r * s(s - 1) / 2], straight
// from an edge list.
inline double OracleQuality(NodeId n, const std::vector<Edge>& edges,
                            const std::vector<double>& sizes,
                            const std::vector<std::int64_t>& labels, double r) {
  std::map<std::int64_t, double> internal;
  std::map<std::int64_t, double> size;
  for (NodeId v = 0; v < n; ++v) {
    size[labels[v]] += sizes.empty() ? 1.0 : sizes[v];
  }
  for (const Edge& e : edges) {
    if (labels[e.u] == labels[e.v]) internal[labels[e.u]] += e.weight;
  }
  double h = 0.0;
  for (const auto& [c, s] : size) h += internal[c] - r * s * (s - 1.0) / 2.0;
  return h;
}

inline double OracleQuality(const RandomGraph& g,
                            const std::vector<std::int64_t>& labels, double r) {
  return OracleQuality(g.n, g.edges, g.sizes, labels, r);
}

// Calls `fn` with every set partition of n elements as restricted growth
// labels.
inline void ForEachSetPartition(
    NodeId n, const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  if (n == 0) {
    fn({});
    return;
  }
  std::vector<std::int64_t> a(n, 0);
  while (true) {
    fn(a);
    // Largest position that may still grow: a[i] <= max(a[0..i-1]).
    NodeId i = n - 1;
    for (; i > 0; --i) {
      const std::int64_t prefix_max = *std::max_element(a.begin(), a.begin() + i);
      if (a[i] <= prefix_max) break;
    }
    if (i == 0) return;
    ++a[i];
    for (NodeId j = i + 1; j < n; ++j) a[j] = 0;
  }
}

inline std::vector<std::int64_t> ToLabels(const Partition& p) {
  const auto labels = p.labels();
  return {labels.begin(), labels.end()};
}

// Largest quality gain of moving one node to another community (existing or
// new), from the oracle. Non-positive for node-optimal partitions.
inline double OracleBestNodeMoveGain(const RandomGraph& g,
                                     const std::vector<std::int64_t>& labels,
                                     double r) {
  const double base = OracleQuality(g, labels, r);
  const std::int64_t fresh = *std::max_element(labels.begin(), labels.end()) + 1;
  double best = -1e300;
  auto moved = labels;
  for (NodeId v = 0; v < g.n; ++v) {
    std::vector<std::int64_t> targets(labels.begin(), labels.end());
    targets.push_back(fresh);
    for (std::int64_t t : targets) {
      if (t == labels[v]) continue;
      moved[v] = t;
      best = std::max(best, OracleQuality(g, moved, r) - base);
    }
    moved[v] = labels[v];
  }
  return best;
}

// Largest quality gain of merging two communities, from the oracle.
inline double OracleBestMergeGain(const RandomGraph& g,
                                  const std::vector<std::int64_t>& labels,
                                  double r) {
  const double base = OracleQuality(g, labels, r);
  std::vector<std::int64_t> ids(labels.begin(), labels.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  double best = -1e300;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      auto merged = labels;
      for (auto& l : merged) {
        if (l == ids[j]) l = ids[i];
      }
      best = std::max(best, OracleQuality(g, merged, r) - base);
    }
  }
  return best;
}

// Number of connected pieces of each community, by union-find over the raw
// edge list.
inline std::map<std::int64_t, int> OracleComponentsPerCommunity(
    const RandomGraph& g, const std::vector<std::int64_t>& labels) {
  std::vector<NodeId> parent(g.n);
  for (NodeId v = 0; v < g.n; ++v) parent[v] = v;
  std::function<NodeId(NodeId)> find = [&](NodeId v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (const Edge& e : g.edges) {
    if (labels[e.u] == labels[e.v]) parent[find(e.u)] = find(e.v);
  }
  std::map<std::int64_t, int> pieces;
  for (NodeId v = 0; v < g.n; ++v) {
    if (find(v) == v) ++pieces[labels[v]];
  }
  return pieces;
}

// a >= b up to a relative slack of 1e-9.
inline bool OracleGe(double a, double b) {
  return a >= b - 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

// No subset of community `own` gains by moving to another community or to a
// new one, by enumeration.
inline bool OracleSubsetOptimal(const RandomGraph& g,
                         const std::vector<std::int64_t>& labels,
                         std::int64_t own, double r) {
  std::vector<NodeId> c;
  for (NodeId v = 0; v < g.n; ++v) {
    if (labels[v] == own) c.push_back(v);
  }
  const double base = OracleQuality(g, labels, r);
  std::vector<std::int64_t> targets(labels.begin(), labels.end());
  targets.push_back(*std::max_element(labels.begin(), labels.end()) + 1);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  for (std::uint32_t mask = 1; mask < (1u << c.size()); ++mask) {
    for (std::int64_t t : targets) {
      if (t == own) continue;
      auto moved = labels;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (mask >> i & 1u) moved[c[i]] = t;
      }
      if (!OracleGe(base, OracleQuality(g, moved, r))) return false;
    }
  }
  return true;
}

}  // namespace commdet::testing

#endif  // COMMDET_TESTS_TEST_UTIL_H_
