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

#ifndef COMMDET_QUALITY_H_
#define COMMDET_QUALITY_H_

#include <algorithm>
#include <cmath>
#include <string>

#include "commdet/graph.h"
#include "commdet/partition.h"

namespace commdet {

enum class QualityKind { kCpm, kModularity };

std::string ToString(QualityKind kind);
// Accepts "cpm" and "modularity".
QualityKind ParseQualityKind(const std::string& name);

// Quality function selector. Both kinds are evaluated in the form
//   H = sum_C [E(C, C) - r * binom(||C||, 2)]
// with r = gamma for CPM and r = gamma / 2m for modularity, where node sizes
// are base-graph degrees and 2m is frozen from the base graph.
struct QualityConfig {
  QualityKind kind = QualityKind::kCpm;
  double gamma = 1.0;
  // 2m of the base graph; only used for modularity.
  double two_m = 0.0;

  static QualityConfig Cpm(double gamma);
  // Freezes 2m from `base`.
  static QualityConfig Modularity(double gamma, const Graph& base);

  // Resolution applied to binom(||C||, 2).
  double resolution() const {
    return kind == QualityKind::kCpm ? gamma : gamma / two_m;
  }
};

// Graph on which `q` is to be optimized: unchanged for CPM, node sizes
// replaced by degrees for modularity.
Graph PrepareGraph(const Graph& base, const QualityConfig& q);

inline double Binom2(double size) { return size * (size - 1.0) / 2.0; }

// Quality of `p` from its cached aggregates.
double Quality(const Partition& p, const QualityConfig& q);

// Quality change when v moves to `target` (a community id or kNewCommunity).
double DeltaMoveNode(const Partition& p, const QualityConfig& q, NodeId v,
                     CommunityId target);

// Quality change when S, which must lie in a single community, moves to
// `target`. Moving S into its own community is a no-op.
double DeltaMoveSet(const Partition& p, const QualityConfig& q,
                    const NodeSet& s, CommunityId target);

// Quality change when community c is merged into d.
double DeltaMerge(const Partition& p, const QualityConfig& q, CommunityId c,
                  CommunityId d);

// Modularity in its usual normalization, (H - gamma / 2) / m. Only defined
// for modularity configs.
double StandardModularity(double h, const QualityConfig& q);

// Comparison slack for two quantities of magnitude a and b.
inline double Tolerance(double a, double b) {
  return 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}
// a > b beyond rounding noise.
inline bool DefinitelyGreater(double a, double b) {
  return a > b + Tolerance(a, b);
}
// a >= b up to rounding noise.
inline bool ApproxGe(double a, double b) { return a >= b - Tolerance(a, b); }

}  // namespace commdet

#endif  // COMMDET_QUALITY_H_
