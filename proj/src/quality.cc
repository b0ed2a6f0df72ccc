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

#include "commdet/quality.h"

#include "commdet/errors.h"

namespace commdet {

std::string ToString(QualityKind kind) {
  return kind == QualityKind::kCpm ? "cpm" : "modularity";
}

QualityKind ParseQualityKind(const std::string& name) {
  if (name == "cpm") return QualityKind::kCpm;
  if (name == "modularity") return QualityKind::kModularity;
  throw ValidationError("unknown quality function: " + name);
}

QualityConfig QualityConfig::Cpm(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("resolution must be positive");
  }
  return {QualityKind::kCpm, gamma, 0.0};
}

QualityConfig QualityConfig::Modularity(double gamma, const Graph& base) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("resolution must be positive");
  }
  const double two_m = 2.0 * base.total_edge_weight();
  if (!(two_m > 0.0)) {
    throw ValidationError("modularity is undefined on a graph without edges");
  }
  return {QualityKind::kModularity, gamma, two_m};
}

Graph PrepareGraph(const Graph& base, const QualityConfig& q) {
  if (q.kind == QualityKind::kCpm) return base;
  return base.WithNodeSizes(Degrees(base));
}

double Quality(const Partition& p, const QualityConfig& q) {
  const double r = q.resolution();
  double h = 0.0;
  for (CommunityId c = 0; c < p.capacity(); ++c) {
    if (p.member_count(c) == 0) continue;
    h += p.internal_weight(c) - r * Binom2(p.size_sum(c));
  }
  return h;
}

double DeltaMoveNode(const Partition& p, const QualityConfig& q, NodeId v,
                     CommunityId target) {
  if (v < 0 || v >= p.node_count()) {
    throw ValidationError("DeltaMoveNode: node id out of range");
  }
  if (target != kNewCommunity && (target < 0 || target >= p.capacity())) {
    throw ValidationError("DeltaMoveNode: invalid target community id");
  }
  const CommunityId a = p.community_of(v);
  if (target == a) return 0.0;
  const double r = q.resolution();
  const double sv = p.graph().node_size(v);
  const double stay = p.WeightToCommunity(v, a) - r * sv * (p.size_sum(a) - sv);
  double join = 0.0;
  if (target != kNewCommunity) {
    join = p.WeightToCommunity(v, target) - r * sv * p.size_sum(target);
  }
  return join - stay;
}

double DeltaMoveSet(const Partition& p, const QualityConfig& q,
                    const NodeSet& s, CommunityId target) {
  if (s.empty()) return 0.0;
  for (NodeId v : s) {
    if (v < 0 || v >= p.node_count()) {
      throw ValidationError("DeltaMoveSet: node id out of range");
    }
  }
  const CommunityId a = p.community_of(s[0]);
  for (NodeId v : s) {
    if (p.community_of(v) != a) {
      throw ValidationError("DeltaMoveSet: set spans several communities");
    }
  }
  if (target != kNewCommunity && (target < 0 || target >= p.capacity())) {
    throw ValidationError("DeltaMoveSet: invalid target community id");
  }
  if (target == a) return 0.0;
  const Graph& g = p.graph();
  double size_s = 0.0;
  double to_rest = 0.0;    // E(S, A - S)
  double to_target = 0.0;  // E(S, target)
  for (NodeId v : s) {
    size_s += g.node_size(v);
    for (const Graph::Neighbor& nb : g.neighbors(v)) {
      const CommunityId c = p.community_of(nb.node);
      if (c == a) {
        if (!s.contains(nb.node)) to_rest += nb.weight;
      } else if (c == target) {
        to_target += nb.weight;
      }
    }
  }
  const double r = q.resolution();
  const double stay = to_rest - r * size_s * (p.size_sum(a) - size_s);
  double join = 0.0;
  if (target != kNewCommunity) join = to_target - r * size_s * p.size_sum(target);
  return join - stay;
}

double DeltaMerge(const Partition& p, const QualityConfig& q, CommunityId c,
                  CommunityId d) {
  if (c == d) return 0.0;
  const Graph& g = p.graph();
  double between = 0.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (p.community_of(v) != c) continue;
    between += p.WeightToCommunity(v, d);
  }
  return between - q.resolution() * p.size_sum(c) * p.size_sum(d);
}

double StandardModularity(double h, const QualityConfig& q) {
  if (q.kind != QualityKind::kModularity) {
    throw ValidationError("StandardModularity: not a modularity config");
  }
  return (h - q.gamma / 2.0) / (q.two_m / 2.0);
}

}  // namespace commdet
