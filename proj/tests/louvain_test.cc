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

#include <random>
#include <vector>

#include "commdet/benchgen.h"
#include "commdet/errors.h"
#include "commdet/louvain.h"
#include "commdet/quality.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace commdet {
namespace {

using testing::MakeRandomGraph;
using testing::ToLabels;

// Two K5s joined by a single edge.
Graph TwoCliques() {
  std::vector<Edge> edges;
  for (NodeId base : {0, 5}) {
    for (NodeId u = 0; u < 5; ++u) {
      for (NodeId v = u + 1; v < 5; ++v) edges.push_back({base + u, base + v});
    }
  }
  edges.push_back({4, 5});
  return Graph::FromEdges(10, edges);
}

TEST(LouvainTest, SplitsTwoCliques) {
  const Graph g = TwoCliques();
  LouvainConfig cfg{QualityConfig::Cpm(0.5), 7};
  const IterationResult r = LouvainIteration(g, Partition(g), cfg);
  EXPECT_EQ(CanonicalForm(r.partition),
            (std::vector<CommunityId>{0, 0, 0, 0, 0, 1, 1, 1, 1, 1}));
  EXPECT_NEAR(Quality(r.partition, cfg.quality), 2 * (10 - 0.5 * 10), 1e-12);
}

TEST(LouvainTest, HighResolutionKeepsSingletons) {
  const Graph g = TwoCliques();
  LouvainConfig cfg{QualityConfig::Cpm(1.5), 1};
  const IterationResult r = LouvainIteration(g, Partition(g), cfg);
  EXPECT_EQ(r.partition.community_count(), 10u);
  EXPECT_EQ(r.stats.levels, 1);
  EXPECT_EQ(r.stats.moves, 0);
  EXPECT_EQ(r.stats.node_visits, 10);
}

TEST(LouvainTest, SameSeedSameResult) {
  std::mt19937_64 rng(5);
  const auto rg = MakeRandomGraph(rng, 40, 0.15, 3);
  LouvainConfig cfg{QualityConfig::Cpm(0.3), 99};
  const auto a = LouvainIteration(rg.graph, Partition(rg.graph), cfg);
  const auto b = LouvainIteration(rg.graph, Partition(rg.graph), cfg);
  EXPECT_EQ(CanonicalForm(a.partition), CanonicalForm(b.partition));
  EXPECT_EQ(a.stats.node_visits, b.stats.node_visits);
}

TEST(LouvainTest, OverrideOrderIsValidated) {
  const Graph g = TwoCliques();
  LouvainConfig cfg{QualityConfig::Cpm(0.5)};
  cfg.visit_order_override = {{0, 1, 2}};
  EXPECT_THROW(LouvainIteration(g, Partition(g), cfg), ValidationError);
  cfg.visit_order_override = {{0, 1, 2, 3, 4, 5, 6, 7, 8, 8}};
  EXPECT_THROW(LouvainIteration(g, Partition(g), cfg), ValidationError);
}

TEST(LouvainTest, RejectsPartitionOfOtherGraph) {
  const Graph g = TwoCliques();
  const Graph other = TwoCliques();
  EXPECT_THROW(LouvainIteration(g, Partition(other), {QualityConfig::Cpm(1.0)}),
               ValidationError);
}

TEST(LouvainTest, AppendixBProducesDisconnectedCommunity) {
  const Fixture f = MakeFixture("appendix_b");
  LouvainConfig cfg{QualityConfig::Cpm(f.gamma)};
  cfg.visit_order_override = {f.visit_order};
  const Partition start = Partition::FromLabels(f.graph, f.partitions[0].labels);
  Rng rng(0);
  Partition p = start;
  MoveNodes(p, cfg.quality, rng, &cfg.visit_order_override);
  EXPECT_TRUE(SamePartition(
      p, Partition::FromLabels(f.graph, f.partitions[1].labels)));
  EXPECT_EQ(ConnectedComponents(f.graph, p.Members(p.community_of(1))).size(),
            2u);
}

TEST(LouvainPropertyTest, EveryIterationIsSeparated) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const auto rg = MakeRandomGraph(rng, 12, 0.3, 3, 0.1, trial % 2 == 1);
    const double gamma = 0.2 + 0.15 * (trial % 6);
    const LouvainConfig cfg{QualityConfig::Cpm(gamma)};
    Rng run(trial);
    Partition p(rg.graph);
    for (int it = 0; it < 3; ++it) {
      p = LouvainIteration(rg.graph, p, cfg, run).partition;
      const auto labels = ToLabels(p);
      EXPECT_LE(testing::OracleBestMergeGain(rg, labels, gamma), 1e-9)
          << "trial " << trial;
      EXPECT_NEAR(Quality(p, cfg.quality),
                  testing::OracleQuality(rg, labels, gamma), 1e-9);
    }
  }
}

TEST(LouvainPropertyTest, StablePartitionIsNodeOptimal) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 60; ++trial) {
    const auto rg = MakeRandomGraph(rng, 12, 0.3, 3, 0.1, trial % 2 == 1);
    const double gamma = 0.2 + 0.15 * (trial % 6);
    const LouvainConfig cfg{QualityConfig::Cpm(gamma)};
    Rng run(trial);
    Partition p(rg.graph);
    bool stable = false;
    for (int it = 0; it < 50 && !stable; ++it) {
      Partition next = LouvainIteration(rg.graph, p, cfg, run).partition;
      stable = SamePartition(next, p);
      p = std::move(next);
    }
    ASSERT_TRUE(stable);
    EXPECT_LE(testing::OracleBestNodeMoveGain(rg, ToLabels(p), gamma), 1e-9)
        << "trial " << trial;
  }
}

TEST(LouvainPropertyTest, IteratingNeverLowersQuality) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rg = MakeRandomGraph(rng, 30, 0.15, 2);
    const QualityConfig q = QualityConfig::Cpm(0.25);
    Partition p = Partition::FromLabels(rg.graph, testing::RandomLabels(rng, 30, 4));
    Rng run(trial);
    double last = Quality(p, q);
    for (int it = 0; it < 4; ++it) {
      p = LouvainIteration(rg.graph, p, {q}, run).partition;
      const double now = Quality(p, q);
      EXPECT_TRUE(ApproxGe(now, last));
      last = now;
    }
  }
}

TEST(LouvainPropertyTest, HierarchyLevelsPreserveQuality) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rg = MakeRandomGraph(rng, 50, 0.08, 2);
    const QualityConfig q = QualityConfig::Cpm(0.2);
    const auto r = LouvainIteration(rg.graph, Partition(rg.graph), {q, 3});
    const double flat = Quality(r.partition, q);
    ASSERT_GE(r.hierarchy.depth(), 1u);
    const auto& top = r.hierarchy.levels().back();
    EXPECT_NEAR(Quality(top.partition, q), flat, 1e-9);
    EXPECT_EQ(r.stats.levels, static_cast<int>(r.hierarchy.depth()));
  }
}

TEST(LouvainPropertyTest, MaxLevelsStopsEarly) {
  std::mt19937_64 rng(34);
  const auto rg = MakeRandomGraph(rng, 60, 0.08);
  LouvainConfig cfg{QualityConfig::Cpm(0.1), 4, 1};
  const auto r = LouvainIteration(rg.graph, Partition(rg.graph), cfg);
  EXPECT_EQ(r.stats.levels, 1);
  EXPECT_EQ(r.hierarchy.depth(), 1u);
}

TEST(LouvainPropertyTest, ModularityOnPreparedGraph) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rg = MakeRandomGraph(rng, 12, 0.3);
    if (rg.graph.total_edge_weight() == 0.0) continue;
    const QualityConfig q = QualityConfig::Modularity(1.0, rg.graph);
    const Graph g = PrepareGraph(rg.graph, q);
    const auto r = LouvainIteration(g, Partition(g), {q, std::uint64_t(trial)});
    // Oracle on the same edges with degree sizes.
    testing::RandomGraph prepared = rg;
    prepared.sizes = Degrees(rg.graph);
    EXPECT_LE(testing::OracleBestMergeGain(prepared, ToLabels(r.partition),
                                           q.resolution()),
              1e-9);
  }
}

}  // namespace
}  // namespace commdet
