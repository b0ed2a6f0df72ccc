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

#include <memory>
#include <sstream>

#include "commdet/benchgen.h"
#include "commdet/errors.h"
#include "commdet/partition.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace commdet {
namespace {

TEST(PartitionTest, SingletonOfTriangle) {
  const std::vector<Edge> edges = {{0, 1}, {1, 2}, {0, 2}};
  const Graph g = Graph::FromEdges(3, edges);
  const Partition p(g);
  EXPECT_EQ(p.community_count(), 3u);
  for (NodeId v = 0; v < 3; ++v) {
    EXPECT_EQ(p.internal_weight(p.community_of(v)), 0.0);
    EXPECT_EQ(p.member_count(p.community_of(v)), 1);
  }
  EXPECT_TRUE(p.AggregatesConsistent());
}

TEST(PartitionTest, SingletonKeepsSelfLoop) {
  const std::vector<Edge> edges = {{0, 0, 2.0}};
  const Graph g = Graph::FromEdges(1, edges);
  const Partition p(g);
  EXPECT_EQ(p.internal_weight(p.community_of(0)), 2.0);
}

TEST(PartitionTest, MoveLoneNodeToNewCommunityKeepsShape) {
  const Graph g = MakeFixture("appendix_c").graph;
  Partition p(g);
  const auto before = CanonicalForm(p);
  p.MoveNode(3, kNewCommunity);
  EXPECT_EQ(CanonicalForm(p), before);
  EXPECT_EQ(p.community_count(), 8u);
  EXPECT_TRUE(p.AggregatesConsistent());
}

TEST(PartitionTest, NodeZeroLeavesAppendixBCommunity) {
  const Fixture f = MakeFixture("appendix_b");
  Partition p = Partition::FromLabels(f.graph, f.partitions[0].labels);
  const CommunityId outside = p.community_of(7);
  p.MoveNode(0, outside);
  EXPECT_TRUE(p.AggregatesConsistent());
  const NodeSet left = p.Members(p.community_of(1));
  EXPECT_EQ(left, (NodeSet{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(ConnectedComponents(f.graph, left).size(), 2u);
  EXPECT_TRUE(SamePartition(
      p, Partition::FromLabels(f.graph, f.partitions[1].labels)));
}

TEST(PartitionTest, InvalidTargetRejected) {
  const Graph g = MakeFixture("appendix_c").graph;
  Partition p(g);
  EXPECT_THROW(p.MoveNode(0, 100), ValidationError);
  EXPECT_THROW(p.MoveNode(0, -5), ValidationError);
  EXPECT_THROW(p.MoveNode(9, 0), ValidationError);
}

TEST(PartitionTest, IncrementalAggregatesMatchRecomputation) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto rg = testing::MakeRandomGraph(rng, 15, 0.3, 5, 0.2, true);
    Partition p(rg.graph);
    std::uniform_int_distribution<NodeId> node(0, 14);
    for (int step = 0; step < 300; ++step) {
      const NodeId v = node(rng);
      std::uniform_int_distribution<int> choice(0, 3);
      if (choice(rng) == 0) {
        p.MoveNode(v, kNewCommunity);
      } else {
        p.MoveNode(v, p.community_of(node(rng)));
      }
      ASSERT_TRUE(p.AggregatesConsistent());
    }
    // Exact recomputation from the edge list.
    const auto labels = testing::ToLabels(p);
    for (CommunityId c : p.communities()) {
      double internal = 0.0;
      for (const Edge& e : rg.edges) {
        if (labels[e.u] == c && labels[e.v] == c) internal += e.weight;
      }
      EXPECT_NEAR(p.internal_weight(c), internal, 1e-9);
    }
    EXPECT_GE(p.capacity() - static_cast<CommunityId>(p.community_count()), 1);
  }
}

TEST(PartitionTest, CommunitiesNeverListEmptyIds) {
  const Graph g = MakeFixture("appendix_c").graph;
  Partition p(g);
  p.MoveNode(1, p.community_of(0));
  p.MoveNode(2, p.community_of(0));
  for (CommunityId c : p.communities()) EXPECT_GT(p.member_count(c), 0);
  EXPECT_EQ(p.communities().size(), p.community_count());
  EXPECT_EQ(p.CommunitySets().size(), 6u);
}

TEST(CanonicalFormTest, LabelPermutationInvariant) {
  const Graph g = MakeFixture("appendix_c").graph;
  const std::vector<std::int64_t> a = {5, 5, 2, 2, 9, 9, 2, 5};
  const std::vector<std::int64_t> b = {1, 1, 0, 0, 7, 7, 0, 1};
  const Partition pa = Partition::FromLabels(g, a);
  const Partition pb = Partition::FromLabels(g, b);
  EXPECT_EQ(CanonicalForm(pa), CanonicalForm(pb));
  EXPECT_EQ(CanonicalForm(pa), (std::vector<CommunityId>{0, 0, 1, 1, 2, 2, 1, 0}));
}

TEST(CanonicalFormTest, DistinctPartitionsOfPathDiffer) {
  const std::vector<Edge> edges = {{0, 1}, {1, 2}};
  const Graph g = Graph::FromEdges(3, edges);
  std::vector<std::vector<CommunityId>> forms;
  testing::ForEachSetPartition(3, [&](const std::vector<std::int64_t>& l) {
    forms.push_back(CanonicalForm(Partition::FromLabels(g, l)));
  });
  ASSERT_EQ(forms.size(), 5u);  // Bell(3)
  for (std::size_t i = 0; i < forms.size(); ++i) {
    for (std::size_t j = i + 1; j < forms.size(); ++j) EXPECT_NE(forms[i], forms[j]);
  }
}

TEST(CanonicalFormTest, Idempotent) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto labels = testing::RandomLabels(rng, 12, 5);
    std::vector<CommunityId> raw(labels.begin(), labels.end());
    const auto once = CanonicalForm(raw);
    EXPECT_EQ(CanonicalForm(once), once);
  }
}

TEST(PartitionIoTest, RoundTrip) {
  const Fixture f = MakeFixture("appendix_c");
  const Partition p = Partition::FromLabels(f.graph, f.partitions[1].labels);
  std::stringstream buf;
  WritePartition(buf, p);
  EXPECT_EQ(buf.str().substr(0, 8), "0\t0\n1\t1\n");
  const Partition q = ReadPartition(buf, f.graph);
  EXPECT_TRUE(SamePartition(p, q));
}

TEST(PartitionIoTest, RejectsIncompleteOrDuplicate) {
  const Graph g = MakeFixture("appendix_c").graph;
  std::istringstream missing("0 0\n1 0\n");
  EXPECT_THROW(ReadPartition(missing, g), ValidationError);
  std::istringstream twice("0 0\n0 1\n");
  EXPECT_THROW(ReadPartition(twice, g), ParseError);
}

TEST(FlattenTest, OneLevelIsIdentity) {
  const Fixture f = MakeFixture("appendix_c");
  HierarchicalPartition h(f.graph);
  h.SetTopPartition(Partition::FromLabels(f.graph, f.partitions[0].labels));
  EXPECT_EQ(CanonicalForm(Flatten(h)),
            CanonicalForm(Partition::FromLabels(f.graph, f.partitions[0].labels)));
}

TEST(FlattenTest, RecursiveSizeCountsBaseNodes) {
  // Sets of 2, 1 and 3 base nodes merged at the next level have size 6.
  std::vector<Edge> edges;
  for (NodeId v = 0; v + 1 < 6; ++v) edges.push_back({v, v + 1, 1.0});
  const Graph g = Graph::FromEdges(6, edges);
  const std::vector<std::int64_t> l1 = {0, 0, 1, 2, 2, 2};
  const Aggregation agg = Aggregate(Partition::FromLabels(g, l1));
  const Aggregation top = Aggregate(Partition::FromLabels(
      agg.graph, std::vector<std::int64_t>{0, 0, 0}));
  EXPECT_EQ(top.graph.node_size(0), 6.0);
}

TEST(FlattenTest, TwoLevelHierarchyOnTenNodes) {
  // Ring of ten nodes; level one pairs neighbours, level two groups pairs.
  std::vector<Edge> edges;
  for (NodeId v = 0; v < 10; ++v) edges.push_back({v, (v + 1) % 10, 1.0});
  const Graph g = Graph::FromEdges(10, edges);
  const std::vector<std::int64_t> l1 = {0, 0, 1, 1, 2, 2, 3, 3, 4, 4};
  const Partition p1 = Partition::FromLabels(g, l1);
  Aggregation a1 = Aggregate(p1);
  auto g1 = std::make_shared<const Graph>(std::move(a1.graph));
  HierarchicalPartition h(g);
  h.SetTopPartition(p1);
  const std::vector<std::int64_t> l2 = {0, 1, 1, 0, 2};
  h.Push(g1, a1.node_of_member, Partition::FromLabels(*g1, l2));
  EXPECT_EQ(h.depth(), 2u);
  // By hand: pairs {0,1},{6,7} -> 0; {2,3},{4,5} -> 1; {8,9} -> 2.
  EXPECT_EQ(CanonicalForm(Flatten(h)),
            (std::vector<CommunityId>{0, 0, 1, 1, 1, 1, 0, 0, 2, 2}));
}

TEST(FlattenTest, InconsistentHierarchyRejected) {
  const Graph g = MakeFixture("appendix_c").graph;
  auto other = std::make_shared<const Graph>(Graph::FromEdges(2, {}));
  HierarchicalPartition h(g);
  EXPECT_THROW(h.Push(other, {0, 1}, Partition(*other)), InternalError);
}

}  // namespace
}  // namespace commdet
