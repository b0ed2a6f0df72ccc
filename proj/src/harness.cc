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

#include "commdet/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <thread>

#include "commdet/errors.h"
#include "commdet/louvain.h"
#include "json.hpp"

namespace commdet {
namespace {

using nlohmann::json;

// Number of communities whose induced subgraph is disconnected.
std::size_t CountDisconnected(const Partition& p) {
  const Graph& g = p.graph();
  const NodeId n = g.node_count();
  std::vector<NodeId> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](NodeId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (NodeId v = 0; v < n; ++v) {
    for (const Graph::Neighbor& nb : g.neighbors(v)) {
      if (nb.node < v || p.community_of(nb.node) != p.community_of(v)) continue;
      const NodeId a = find(v);
      const NodeId b = find(nb.node);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<NodeId> roots(p.capacity(), 0);
  for (NodeId v = 0; v < n; ++v) {
    if (find(v) == v) ++roots[p.community_of(v)];
  }
  return static_cast<std::size_t>(
      std::count_if(roots.begin(), roots.end(), [](NodeId r) { return r > 1; }));
}

json RecordJson(const IterationRecord& r, bool timing) {
  json j{{"type", "iteration"},
         {"iteration", r.index},
         {"quality", r.quality},
         {"normalized_quality", r.normalized_quality},
         {"node_visits", r.node_visits},
         {"refine_visits", r.refine_visits},
         {"moves", r.moves},
         {"communities", r.communities},
         {"percent_disconnected", r.percent_disconnected},
         {"stable", r.stable}};
  if (r.modularity) j["modularity"] = *r.modularity;
  if (r.percent_badly_connected) {
    j["percent_badly_connected"] = *r.percent_badly_connected;
  }
  if (r.matches_planted) j["matches_planted"] = *r.matches_planted;
  if (timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

}  // namespace

std::string ToString(Algorithm a) {
  return a == Algorithm::kLouvain ? "louvain" : "leiden";
}

Algorithm ParseAlgorithm(const std::string& name) {
  if (name == "louvain") return Algorithm::kLouvain;
  if (name == "leiden") return Algorithm::kLeiden;
  throw ValidationError("unknown algorithm: " + name);
}

ExperimentReport RunIterations(const Graph& g, const RunConfig& cfg,
                               std::optional<Partition> start) {
  if (cfg.max_iterations < 1) {
    throw ValidationError("at least one iteration is required");
  }
  if (cfg.patience < 1) throw ValidationError("patience must be positive");
  if (cfg.planted != nullptr &&
      static_cast<NodeId>(cfg.planted->size()) != g.node_count()) {
    throw ValidationError("planted labels do not match the graph");
  }
  ExperimentReport report;
  report.algorithm = cfg.algorithm;
  report.quality = cfg.quality;
  report.theta = cfg.theta;
  report.seed = cfg.seed;
  report.nodes = g.node_count();
  report.edges = g.edge_count();
  report.total_weight = g.total_edge_weight();

  std::vector<CommunityId> planted;
  if (cfg.planted != nullptr) planted = CanonicalForm(*cfg.planted);

  Partition current = start.has_value() ? std::move(*start) : Partition(g);
  Rng rng(cfg.seed);
  LouvainConfig louvain{cfg.quality, cfg.seed, 0, {}};
  LeidenConfig leiden{cfg.quality, cfg.theta, cfg.seed, 0};
  std::optional<MergeForest> forest;
  std::vector<std::int64_t> community_tree;
  int streak = 0;
  report.converged = cfg.stop == StopRule::kFixed;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const auto t0 = std::chrono::steady_clock::now();
    IterationRecord rec;
    Partition next = current;
    RunStats stats;
    if (cfg.algorithm == Algorithm::kLouvain) {
      IterationResult res = LouvainIteration(g, current, louvain, rng);
      next = std::move(res.partition);
      stats = res.stats;
    } else {
      LeidenResult res = LeidenIteration(g, current, leiden, rng);
      next = std::move(res.partition);
      stats = res.stats;
      forest = std::move(res.forest);
      community_tree = std::move(res.community_tree);
    }
    const auto t1 = std::chrono::steady_clock::now();
    rec.index = it;
    rec.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rec.quality = Quality(next, cfg.quality);
    const double m = g.total_edge_weight();
    rec.normalized_quality = m > 0.0 ? rec.quality / (2.0 * m) : 0.0;
    if (cfg.quality.kind == QualityKind::kModularity) {
      rec.modularity = StandardModularity(rec.quality, cfg.quality);
    }
    rec.node_visits = stats.node_visits;
    rec.refine_visits = stats.refine_visits;
    rec.moves = stats.moves;
    rec.communities = next.community_count();
    rec.stable = SamePartition(next, current);
    rec.percent_disconnected =
        100.0 * static_cast<double>(CountDisconnected(next)) /
        static_cast<double>(std::max<std::size_t>(1, rec.communities));
    if (cfg.measure_badly_connected) {
      LeidenConfig sub{cfg.quality, cfg.theta,
                       cfg.seed * 1000003u + static_cast<std::uint64_t>(it), 0};
      rec.percent_badly_connected =
          DetectBadlyConnected(next, cfg.quality, sub).percent_badly_connected();
    }
    if (!planted.empty()) rec.matches_planted = CanonicalForm(next) == planted;
    current = std::move(next);
    report.iterations.push_back(rec);

    streak = rec.stable ? streak + 1 : 0;
    bool stop = false;
    if (cfg.stop == StopRule::kUntilStable) {
      stop = rec.stable;
    } else if (cfg.stop == StopRule::kUntilAsymptotic) {
      stop = cfg.algorithm == Algorithm::kLouvain ? rec.stable
                                                  : streak >= cfg.patience;
    }
    if (stop) {
      report.converged = true;
      break;
    }
  }
  report.final_labels = CanonicalForm(current);
  if (cfg.audit != AuditLevel::kNone) {
    VerifyOptions opts;
    opts.exact_limit = cfg.exact_limit;
    opts.seed = cfg.seed;
    if (forest.has_value()) {
      opts.forest = &*forest;
      opts.community_tree = &community_tree;
    }
    report.audit_json =
        GuaranteeReportJson(AuditPartition(current, cfg.quality, cfg.audit, opts));
  }
  return report;
}

ExperimentReport IterateUntilAsymptotic(const Graph& g, RunConfig cfg,
                                        int max_iterations) {
  cfg.stop = StopRule::kUntilAsymptotic;
  cfg.max_iterations = max_iterations;
  return RunIterations(g, cfg);
}

void WriteReportJsonl(std::ostream& out, const ExperimentReport& report,
                      bool timing) {
  json header{{"format", "commdet.report"},
              {"version", 1},
              {"algorithm", ToString(report.algorithm)},
              {"quality", ToString(report.quality.kind)},
              {"resolution", report.quality.gamma},
              {"seed", report.seed},
              {"graph",
               {{"nodes", report.nodes},
                {"edges", report.edges},
                {"total_weight", report.total_weight}}}};
  if (report.algorithm == Algorithm::kLeiden) header["theta"] = report.theta;
  out << header.dump() << '\n';
  for (const IterationRecord& r : report.iterations) {
    out << RecordJson(r, timing).dump() << '\n';
  }
  if (report.audit_json) {
    json audit{{"type", "audit"}, {"report", json::parse(*report.audit_json)}};
    out << audit.dump() << '\n';
  }
  json summary{{"type", "summary"},
               {"iterations", report.iterations.size()},
               {"converged", report.converged}};
  if (!report.iterations.empty()) {
    const IterationRecord& last = report.iterations.back();
    summary["final_quality"] = last.quality;
    summary["final_normalized_quality"] = last.normalized_quality;
    summary["communities"] = last.communities;
    std::int64_t visits = 0;
    for (const IterationRecord& r : report.iterations) {
      visits += r.node_visits + r.refine_visits;
    }
    summary["total_visits"] = visits;
  }
  out << summary.dump() << '\n';
}

void WriteReportCsv(std::ostream& out, const ExperimentReport& report) {
  out << "algorithm,iteration,quality,normalized_quality,elapsed_ms,"
         "node_visits,refine_visits,moves,communities,percent_disconnected,"
         "percent_badly_connected,stable\n";
  for (const IterationRecord& r : report.iterations) {
    out << ToString(report.algorithm) << ',' << r.index << ',' << r.quality << ','
        << r.normalized_quality << ',' << r.elapsed_ms << ',' << r.node_visits
        << ',' << r.refine_visits << ',' << r.moves << ',' << r.communities << ','
        << r.percent_disconnected << ',';
    if (r.percent_badly_connected) out << *r.percent_badly_connected;
    out << ',' << (r.stable ? 1 : 0) << '\n';
  }
}

double BadlyConnectedTable::MeanDisconnected(Algorithm a, int iteration) const {
  double sum = 0.0;
  int count = 0;
  for (const BadlyConnectedRow& r : rows) {
    if (r.algorithm == a && r.iteration == iteration) {
      sum += r.percent_disconnected;
      ++count;
    }
  }
  return count > 0 ? sum / count : 0.0;
}

double BadlyConnectedTable::MeanBadlyConnected(Algorithm a, int iteration) const {
  double sum = 0.0;
  int count = 0;
  for (const BadlyConnectedRow& r : rows) {
    if (r.algorithm == a && r.iteration == iteration) {
      sum += r.percent_badly_connected;
      ++count;
    }
  }
  return count > 0 ? sum / count : 0.0;
}

BadlyConnectedTable BadlyConnectedExperiment(const Graph& g, const QualityConfig& q,
                                             int replications, int iterations,
                                             std::uint64_t seed, double theta,
                                             bool asymptotic) {
  if (replications < 1 || iterations < 1) {
    throw ValidationError("replications and iterations must be positive");
  }
  std::vector<std::vector<BadlyConnectedRow>> per_rep(replications);
  auto run_one = [&](int rep) {
    std::vector<BadlyConnectedRow>& rows = per_rep[rep];
    const std::uint64_t rep_seed = seed + static_cast<std::uint64_t>(rep);
    for (Algorithm a : {Algorithm::kLouvain, Algorithm::kLeiden}) {
      RunConfig cfg;
      cfg.algorithm = a;
      cfg.quality = q;
      cfg.theta = theta;
      cfg.seed = rep_seed;
      cfg.max_iterations = iterations;
      cfg.measure_badly_connected = true;
      const ExperimentReport report = RunIterations(g, cfg);
      for (const IterationRecord& r : report.iterations) {
        rows.push_back({a, rep, r.index, r.percent_disconnected,
                        r.percent_badly_connected.value_or(0.0), r.communities});
      }
      if (a == Algorithm::kLeiden && asymptotic) {
        std::vector<std::int64_t> labels(report.final_labels.begin(),
                                         report.final_labels.end());
        RunConfig more = cfg;
        more.measure_badly_connected = false;
        more.stop = StopRule::kUntilAsymptotic;
        more.max_iterations = 200;
        more.seed = rep_seed + 0x5bd1e995u;
        const ExperimentReport tail =
            RunIterations(g, more, Partition::FromLabels(g, labels));
        std::vector<std::int64_t> final_labels(tail.final_labels.begin(),
                                               tail.final_labels.end());
        const Partition final_p = Partition::FromLabels(g, final_labels);
        const BadlyConnectedSummary s = DetectBadlyConnected(
            final_p, q, LeidenConfig{q, theta, rep_seed ^ 0xabcdefu, 0});
        rows.push_back({a, rep, 0, s.percent_disconnected(),
                        s.percent_badly_connected(), final_p.community_count()});
      }
    }
  };
  const int workers = std::min(ThreadLimit(), replications);
  if (workers <= 1) {
    for (int rep = 0; rep < replications; ++rep) run_one(rep);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int rep = next++; rep < replications; rep = next++) run_one(rep);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (std::thread& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  BadlyConnectedTable table;
  for (auto& rows : per_rep) {
    table.rows.insert(table.rows.end(), rows.begin(), rows.end());
  }
  return table;
}

void WriteBadlyConnectedCsv(std::ostream& out, const BadlyConnectedTable& table) {
  out << "algorithm,replication,iteration,percent_disconnected,"
         "percent_badly_connected,communities\n";
  for (const BadlyConnectedRow& r : table.rows) {
    out << ToString(r.algorithm) << ',' << r.replication << ',';
    if (r.iteration == 0) {
      out << "asymptotic";
    } else {
      out << r.iteration;
    }
    out << ',' << r.percent_disconnected << ',' << r.percent_badly_connected << ','
        << r.communities << '\n';
  }
}

int ThreadLimit() {
  int limit = static_cast<int>(std::thread::hardware_concurrency());
  if (limit < 1) limit = 1;
  if (const char* env = std::getenv("COMMUNITY_DETECT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) limit = static_cast<int>(v);
  }
  return limit;
}

}  // namespace commdet
