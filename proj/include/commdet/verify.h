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

#ifndef COMMDET_VERIFY_H_
#define COMMDET_VERIFY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "commdet/graph.h"
#include "commdet/leiden.h"
#include "commdet/partition.h"
#include "commdet/quality.h"

namespace commdet {

enum class Verdict { kPass, kFail, kUnknown };
enum class Method { kExact, kBruteForce, kCertificate, kSampled, kSkippedTooLarge };

std::string ToString(Verdict v);
std::string ToString(Method m);

struct CheckResult {
  Verdict verdict = Verdict::kUnknown;
  Method method = Method::kSkippedTooLarge;

  bool passed() const { return verdict == Verdict::kPass; }
  bool failed() const { return verdict == Verdict::kFail; }
};

// Slack used by all checkers: a quantity counts as positive only above
// 1e-9 relative to the magnitudes compared.
bool CheckGe(double a, double b);

struct VerifyOptions {
  // Communities with at most this many members are checked by enumeration.
  int exact_limit = 14;
  // Random candidate subsets tried per large community.
  int sample_budget = 10 * 1024;
  std::uint64_t seed = 0;
  // Merge trees from the Leiden run that produced the partition, used as
  // gamma-connectivity certificates for large communities.
  const MergeForest* forest = nullptr;
  const std::vector<std::int64_t>* community_tree = nullptr;
};

// Community pairs (C, D) with a positive merge gain.
struct SeparationViolation {
  CommunityId c;
  CommunityId d;
  double delta;
};

// Exact. Only pairs joined by an edge can have a positive merge gain.
std::vector<SeparationViolation> FindSeparationViolations(const Partition& p,
                                                          const QualityConfig& q);
bool CheckGammaSeparation(const Partition& p, const QualityConfig& q);

// Nodes with a strictly improving single move (to a neighbouring community
// or to an empty one).
std::vector<NodeId> FindNodeOptimalityViolations(const Partition& p,
                                                 const QualityConfig& q);
bool CheckNodeOptimality(const Partition& p, const QualityConfig& q);

// Checks for one set C of nodes of g, interpreted as a community, with
// resolution r (QualityConfig::resolution()).
CheckResult CheckGammaConnectivity(const Graph& g, const NodeSet& c, double r,
                                   const VerifyOptions& opts = {},
                                   std::optional<std::int64_t> tree = {});
CheckResult CheckSubpartitionDensity(const Graph& g, const NodeSet& c, double r,
                                     const VerifyOptions& opts = {},
                                     std::optional<std::int64_t> tree = {});
CheckResult CheckUniformDensity(const Graph& g, const NodeSet& c, double r,
                                const VerifyOptions& opts = {});

// Per community (CommunitySets() order): no subset of it gains by moving
// to another community or to an empty one.
std::vector<CheckResult> CheckSubsetOptimality(const Partition& p,
                                               const QualityConfig& q,
                                               const VerifyOptions& opts = {});

// Quality gap bound for uniformly dense partitions.
struct GapBound {
  // True when the partition was shown uniformly dense exactly and the graph
  // meets the bound's assumptions.
  bool applicable = false;
  // Largest edge weight used to scale the resolution.
  double max_weight = 0.0;
  // Resolution divided by the weight scale.
  double factor = 0.0;
  // (1 - factor) * weight between different communities.
  double bound = 0.0;
  // Same with the weight inside communities added, i.e. half the sum of
  // E(C, D) over all ordered pairs including C = D.
  double bound_all_pairs = 0.0;
  // Upper bound on the optimal quality, (1 - factor) m minus the
  // resolution-weighted deficit of missing internal weight.
  double optimal_quality_bound = 0.0;
  std::string note;
};

// `uniformly_dense_exact` states whether the caller verified uniform density
// exactly; the bound is only applicable then.
GapBound OptimalityGapBound(const Partition& p, const QualityConfig& q,
                            bool uniformly_dense_exact);

// Per community: an order v0, v1, ... in which each node joins the set of
// its predecessors without lowering quality. Empty when some community has
// no such order.
std::optional<std::vector<std::vector<NodeId>>> FindNondecreasingBuildSequence(
    const Partition& p, const QualityConfig& q);

// Exhaustive search over all set partitions. Among optimal partitions the
// one with lexicographically smallest canonical labels is returned.
Partition BruteForceOptimal(const Graph& g, const QualityConfig& q,
                            int n_limit = 12);

enum class AuditLevel { kNone, kFast, kFull };
AuditLevel ParseAuditLevel(const std::string& name);

struct CommunityReport {
  NodeId members = 0;
  double size = 0.0;
  bool connected = true;
  CheckResult gamma_separated;
  CheckResult gamma_connected;
  CheckResult node_optimal;
  CheckResult subpartition_dense;
  CheckResult uniformly_dense;
  CheckResult subset_optimal;
};

struct GuaranteeReport {
  std::vector<CommunityReport> communities;
  GapBound gap_bound;
  AuditLevel level = AuditLevel::kFull;

  // Partition-level verdicts: fail if any community fails, unknown if any is
  // unknown.
  Verdict connected() const;
  Verdict gamma_separated() const;
  Verdict gamma_connected() const;
  Verdict node_optimal() const;
  Verdict subpartition_dense() const;
  Verdict uniformly_dense() const;
  Verdict subset_optimal() const;

  // No community passes a property while failing a weaker one.
  bool ChainConsistent() const;
};

GuaranteeReport AuditPartition(const Partition& p, const QualityConfig& q,
                               AuditLevel level, const VerifyOptions& opts = {});

// JSON document with per-community verdicts and method tags.
std::string GuaranteeReportJson(const GuaranteeReport& report);

struct BadlyConnectedCommunity {
  NodeId members = 0;
  bool connected = true;
  bool badly_connected = false;
  // Communities found by Leiden on the induced subgraph.
  std::size_t parts = 1;
};

struct BadlyConnectedSummary {
  std::vector<BadlyConnectedCommunity> communities;
  std::size_t disconnected = 0;
  std::size_t badly_connected = 0;

  double percent_disconnected() const;
  double percent_badly_connected() const;
};

// Runs Leiden on the subgraph induced by each community until ten
// iterations in a row leave the partition unchanged. A community counts as
// badly connected when that run splits it; disconnected communities always
// count. The count is a lower bound.
BadlyConnectedSummary DetectBadlyConnected(const Partition& p,
                                           const QualityConfig& q,
                                           const LeidenConfig& leiden);

}  // namespace commdet

#endif  // COMMDET_VERIFY_H_
