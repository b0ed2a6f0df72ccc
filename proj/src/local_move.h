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

#ifndef COMMDET_SRC_LOCAL_MOVE_H_
#define COMMDET_SRC_LOCAL_MOVE_H_

#include <limits>
#include <vector>

#include "commdet/partition.h"
#include "commdet/quality.h"

namespace commdet::internal {

// Best single-node move for v among its current community, the communities
// of its neighbours and an empty community.
struct MoveChoice {
  CommunityId target;
  double weight_to_old;
  double weight_to_target;
  bool moves;
};

// Scratch space for evaluating node moves in O(deg v).
class MoveEvaluator {
 public:
  explicit MoveEvaluator(const Partition& p)
      : weight_(p.capacity(), 0.0), seen_(p.capacity(), 0) {}

  // The current community wins ties; among the other candidates the first
  // one met in neighbour order wins, the empty community is tried last.
  MoveChoice Best(const Partition& p, double resolution, NodeId v) {
    const Graph& g = p.graph();
    touched_.clear();
    for (const Graph::Neighbor& nb : g.neighbors(v)) {
      const CommunityId c = p.community_of(nb.node);
      if (!seen_[c]) {
        seen_[c] = 1;
        touched_.push_back(c);
      }
      weight_[c] += nb.weight;
    }
    const CommunityId own = p.community_of(v);
    const double sv = g.node_size(v);
    const double w_own = weight_[own];
    const double stay = w_own - resolution * sv * (p.size_sum(own) - sv);

    CommunityId best = own;
    double best_value = -std::numeric_limits<double>::infinity();
    double best_weight = 0.0;
    for (CommunityId c : touched_) {
      if (c == own) continue;
      const double value = weight_[c] - resolution * sv * p.size_sum(c);
      if (best == own || DefinitelyGreater(value, best_value)) {
        best = c;
        best_value = value;
        best_weight = weight_[c];
      }
    }
    if (p.member_count(own) > 1 &&
        (best == own || DefinitelyGreater(0.0, best_value))) {
      best = kNewCommunity;
      best_value = 0.0;
      best_weight = 0.0;
    }
    for (CommunityId c : touched_) {
      weight_[c] = 0.0;
      seen_[c] = 0;
    }
    if (best == own || !DefinitelyGreater(best_value, stay)) {
      return {own, w_own, w_own, false};
    }
    return {best, w_own, best_weight, true};
  }

 private:
  std::vector<double> weight_;
  std::vector<char> seen_;
  std::vector<CommunityId> touched_;
};

}  // namespace commdet::internal

#endif  // COMMDET_SRC_LOCAL_MOVE_H_
