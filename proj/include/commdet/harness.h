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

#ifndef COMMDET_HARNESS_H_
#define COMMDET_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "commdet/graph.h"
#include "commdet/leiden.h"
#include "commdet/partition.h"
#include "commdet/quality.h"
#include "commdet/verify.h"

namespace commdet {

enum class Algorithm { kLouvain, kLeiden };
std::string ToString(Algorithm a);
Algorithm ParseAlgorithm(const std::string& name);

enum class StopRule {
  kFixed,            // exactly max_iterations iterations
  kUntilStable,      // first iteration that changes nothing
  kUntilAsymptotic,  // Louvain: first stable; Leiden: `patience` in a row
};

struct RunConfig {
  Algorithm algorithm = Algorithm::kLeiden;
  QualityConfig quality;
  double theta = kDefaultTheta;
  std::uint64_t seed = 0;
  StopRule stop = StopRule::kFixed;
  int max_iterations = 10;
  int patience = 10;
  // Run the badly-connected detection after every iteration (expensive).
  bool measure_badly_connected = false;
  AuditLevel audit = AuditLevel::kNone;
  int exact_limit = 14;
  // Planted labels to compare against, if any.
  const std::vector<CommunityId>* planted = nullptr;
};

struct IterationRecord {
  int index = 0;
  double quality = 0.0;
  // H / 2m.
  double normalized_quality = 0.0;
  // Usual modularity normalization; only for modularity runs.
  std::optional<double> modularity;
  double elapsed_ms = 0.0;
  std::int64_t node_visits = 0;
  std::int64_t refine_visits = 0;
  std::int64_t moves = 0;
  std::size_t communities = 0;
  double percent_disconnected = 0.0;
  std::optional<double> percent_badly_connected;
  bool stable = false;
  std::optional<bool> matches_planted;
};

struct ExperimentReport {
  Algorithm algorithm = Algorithm::kLeiden;
  QualityConfig quality;
  double theta = kDefaultTheta;
  std::uint64_t seed = 0;
  NodeId nodes = 0;
  std::size_t edges = 0;
  double total_weight = 0.0;
  std::vector<IterationRecord> iterations;
  // False when the stop rule was not met within max_iterations.
  bool converged = true;
  std::vector<CommunityId> final_labels;
  std::optional<std::string> audit_json;
};

// Runs iterations of `cfg.algorithm` on `g` (already prepared for the
// quality function), each starting from the previous result.
ExperimentReport RunIterations(const Graph& g, const RunConfig& cfg,
                               std::optional<Partition> start = std::nullopt);

// RunIterations with StopRule::kUntilAsymptotic.
ExperimentReport IterateUntilAsymptotic(const Graph& g, RunConfig cfg,
                                        int max_iterations);

// JSON Lines: a versioned header, one record per iteration, the audit (if
// any) and a summary. With `timing` false elapsed times are omitted.
void WriteReportJsonl(std::ostream& out, const ExperimentReport& report,
                      bool timing = true);
// One row per iteration.
void WriteReportCsv(std::ostream& out, const ExperimentReport& report);

struct BadlyConnectedRow {
  Algorithm algorithm;
  int replication;
  // 1-based; 0 marks the row measured after asymptotic stability.
  int iteration;
  double percent_disconnected;
  double percent_badly_connected;
  std::size_t communities;
};

struct BadlyConnectedTable {
  std::vector<BadlyConnectedRow> rows;
  // Mean over replications for a given algorithm and iteration.
  double MeanDisconnected(Algorithm a, int iteration) const;
  double MeanBadlyConnected(Algorithm a, int iteration) const;
};

// Louvain and Leiden, `iterations` iterations each, `replications` times
// with seeds seed, seed + 1, ...; with `asymptotic` Leiden then continues
// until asymptotically stable and one more row is recorded. Replications
// run in parallel, at most COMMUNITY_DETECT_THREADS at a time.
BadlyConnectedTable BadlyConnectedExperiment(const Graph& g, const QualityConfig& q,
                                             int replications, int iterations,
                                             std::uint64_t seed,
                                             double theta = kDefaultTheta,
                                             bool asymptotic = false);
void WriteBadlyConnectedCsv(std::ostream& out, const BadlyConnectedTable& table);

// Worker threads allowed by COMMUNITY_DETECT_THREADS (default: hardware).
int ThreadLimit();

}  // namespace commdet

#endif  // COMMDET_HARNESS_H_
