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

#include "commdet/louvain.h"

#include <algorithm>
#include <memory>
#include <numeric>

#include "commdet/errors.h"
#include "local_move.h"

namespace commdet {
namespace {

void CheckOrder(const std::vector<NodeId>& order, NodeId n) {
  std::vector<char> seen(n, 0);
  if (static_cast<NodeId>(order.size()) != n) {
    throw ValidationError("visit order must list every node once");
  }
  for (NodeId v : order) {
    if (v < 0 || v >= n || seen[v]) {
      throw ValidationError("visit order must list every node once");
    }
    seen[v] = 1;
  }
}

}  // namespace

bool MoveNodes(Partition& p, const QualityConfig& q, Rng& rng,
               const std::vector<std::vector<NodeId>>* orders,
               RunStats* stats) {
  const NodeId n = p.node_count();
  if (orders != nullptr) {
    for (const auto& order : *orders) CheckOrder(order, n);
  }
  const double r = q.resolution();
  internal::MoveEvaluator eval(p);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  bool moved_any = false;
  for (std::size_t sweep = 0;; ++sweep) {
    if (orders != nullptr && !orders->empty()) {
      order = (*orders)[std::min(sweep, orders->size() - 1)];
    } else {
      std::shuffle(order.begin(), order.end(), rng);
    }
    std::int64_t moves = 0;
    for (NodeId v : order) {
      const internal::MoveChoice choice = eval.Best(p, r, v);
      if (!choice.moves) continue;
      p.MoveNode(v, choice.target, choice.weight_to_old, choice.weight_to_target);
      ++moves;
    }
    if (stats != nullptr) {
      stats->node_visits += n;
      stats->moves += moves;
    }
    if (moves == 0) break;
    moved_any = true;
  }
  return moved_any;
}

IterationResult LouvainIteration(const Graph& g, const Partition& p0,
                                 const LouvainConfig& cfg, Rng& rng) {
  if (&p0.graph() != &g) {
    throw ValidationError("LouvainIteration: partition of a different graph");
  }
  HierarchicalPartition h(g);
  RunStats stats;
  Partition p = p0;
  const Graph* level_graph = &g;
  for (int level = 0;; ++level) {
    ++stats.levels;
    const bool use_override = level == 0 && !cfg.visit_order_override.empty();
    MoveNodes(p, cfg.quality, rng,
              use_override ? &cfg.visit_order_override : nullptr, &stats);
    const bool done =
        static_cast<NodeId>(p.community_count()) == level_graph->node_count();
    if (done || (cfg.max_levels > 0 && level + 1 >= cfg.max_levels)) {
      h.SetTopPartition(std::move(p));
      break;
    }
    Aggregation agg = Aggregate(p);
    h.SetTopPartition(std::move(p));
    auto next = std::make_shared<const Graph>(std::move(agg.graph));
    level_graph = next.get();
    h.Push(next, std::move(agg.node_of_member), Partition(*next));
    p = Partition(*next);
  }
  Partition flat = Flatten(h);
  return {std::move(h), std::move(flat), stats};
}

IterationResult LouvainIteration(const Graph& g, const Partition& p0,
                                 const LouvainConfig& cfg) {
  Rng rng(cfg.seed);
  return LouvainIteration(g, p0, cfg, rng);
}

}  // namespace commdet
