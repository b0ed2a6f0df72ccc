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

#ifndef COMMDET_ITERATION_H_
#define COMMDET_ITERATION_H_

#include <cstdint>
#include <random>

#include "commdet/partition.h"

namespace commdet {

using Rng = std::mt19937_64;

// Work counters of one algorithm iteration.
struct RunStats {
  // Node evaluations during local moving.
  std::int64_t node_visits = 0;
  // Node evaluations during refinement (Leiden only).
  std::int64_t refine_visits = 0;
  std::int64_t moves = 0;
  // Aggregation levels visited, including the base level.
  int levels = 0;

  std::int64_t total_visits() const { return node_visits + refine_visits; }
};

struct IterationResult {
  HierarchicalPartition hierarchy;
  // Flattened final partition of the input graph, canonical labels.
  Partition partition;
  RunStats stats;
};

}  // namespace commdet

#endif  // COMMDET_ITERATION_H_
