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

#ifndef COMMDET_LOUVAIN_H_
#define COMMDET_LOUVAIN_H_

#include <cstdint>
#include <vector>

#include "commdet/graph.h"
#include "commdet/iteration.h"
#include "commdet/partition.h"
#include "commdet/quality.h"

namespace commdet {

struct LouvainConfig {
  QualityConfig quality;
  std::uint64_t seed = 0;
  // Maximum number of aggregation levels; 0 means unlimited.
  int max_levels = 0;
  // Explicit node orders for the sweeps on the input graph, used in turn;
  // the last one repeats. Sweeps on aggregate graphs stay random.
  std::vector<std::vector<NodeId>> visit_order_override;
};

// Repeated sweeps over all nodes, moving each to the best community when
// that strictly improves quality, until a sweep makes no move. `orders`
// (possibly null) overrides the random sweep order as in LouvainConfig.
// Returns whether any node moved.
bool MoveNodes(Partition& p, const QualityConfig& q, Rng& rng,
               const std::vector<std::vector<NodeId>>* orders = nullptr,
               RunStats* stats = nullptr);

// One iteration: local moving and aggregation until every community is a
// single node. `p0` must be a partition of `g`.
IterationResult LouvainIteration(const Graph& g, const Partition& p0,
                                 const LouvainConfig& cfg, Rng& rng);
// Same with a fresh generator seeded from cfg.seed.
IterationResult LouvainIteration(const Graph& g, const Partition& p0,
                                 const LouvainConfig& cfg);

}  // namespace commdet

#endif  // COMMDET_LOUVAIN_H_
