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

#include <cmath>
#include <set>
#include <utility>

#include "commdet/benchgen.h"
#include "commdet/errors.h"
#include "commdet/quality.h"
#include "gtest/gtest.h"

namespace commdet {
namespace {

TEST(BenchmarkSpecTest, ParseAndPrint) {
  const BenchmarkSpec s = BenchmarkSpec::Parse("n=200,size=20,k=8,mu=0.25,seed=3");
  EXPECT_EQ(s.n, 200);
  EXPECT_EQ(s.community_size, 20);
  EXPECT_EQ(s.mean_degree, 8.0);
  EXPECT_EQ(s.mu, 0.25);
  EXPECT_EQ(s.seed, 3u);
  const BenchmarkSpec again = BenchmarkSpec::Parse(s.ToString());
  EXPECT_EQ(again.ToString(), s.ToString());
}

TEST(BenchmarkSpecTest, OmittedKeysKeepDefaults) {
  const BenchmarkSpec s = BenchmarkSpec::Parse("mu=0.5");
  EXPECT_EQ(s.n, BenchmarkSpec{}.n);
  EXPECT_EQ(s.community_size, BenchmarkSpec{}.community_size);
  EXPECT_EQ(s.mu, 0.5);
}

TEST(BenchmarkSpecTest, RejectsBadInput) {
  for (const char* text : {"mu=1.5", "mu=-0.1", "n=0", "size=0", "k=-2",
                           "n=10x", "colour=red", "n", "k=abc"}) {
    EXPECT_THROW(BenchmarkSpec::Parse(text), ValidationError) << text;
  }
}

TEST(BenchmarkSpecTest, PairCounts) {
  BenchmarkSpec s;
  s.n = 23;
  s.community_size = 5;  // four full blocks and one of three
  EXPECT_EQ(s.community_count(), 5);
  EXPECT_EQ(s.intra_pairs(), 4 * 10 + 3);
  EXPECT_EQ(s.intra_pairs() + s.inter_pairs(), 23 * 22 / 2);
}

TEST(GeneratePlantedTest, ShapeOfGraph) {
  const BenchmarkSpec s = BenchmarkSpec::Parse("n=1000,size=50,k=10,mu=0.3,seed=9");
  const PlantedBenchmark b = GeneratePlanted(s);
  EXPECT_EQ(b.graph.node_count(), 1000);
  EXPECT_EQ(b.graph.edge_count(), 5000);
  EXPECT_EQ(b.graph.total_edge_weight(), 5000.0);
  std::set<std::pair<NodeId, NodeId>> pairs;
  std::int64_t inter = 0;
  for (const Edge& e : b.graph.Edges()) {
    EXPECT_NE(e.u, e.v);
    EXPECT_EQ(e.weight, 1.0);
    EXPECT_TRUE(pairs.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second);
    if (b.planted[e.u] != b.planted[e.v]) ++inter;
  }
  // Binomial(5000, 0.3): five standard deviations.
  const double sd = std::sqrt(5000 * 0.3 * 0.7);
  EXPECT_NEAR(static_cast<double>(inter), 1500.0, 5 * sd);
  for (NodeId v = 0; v < 1000; ++v) EXPECT_EQ(b.planted[v], v / 50);
}

TEST(GeneratePlantedTest, SeedDeterminesGraph) {
  BenchmarkSpec s = BenchmarkSpec::Parse("n=300,size=30,k=6,mu=0.4,seed=1");
  const auto a = GeneratePlanted(s).graph.Edges();
  const auto b = GeneratePlanted(s).graph.Edges();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].u, b[i].u);
    EXPECT_EQ(a[i].v, b[i].v);
  }
  s.seed = 2;
  const auto c = GeneratePlanted(s).graph.Edges();
  bool differs = c.size() != a.size();
  for (std::size_t i = 0; !differs && i < a.size(); ++i) {
    differs = a[i].u != c[i].u || a[i].v != c[i].v;
  }
  EXPECT_TRUE(differs);
}

TEST(GeneratePlantedTest, PureBlocksWhenMuIsZero) {
  const auto b = GeneratePlanted(BenchmarkSpec::Parse("n=100,size=10,k=4,mu=0"));
  for (const Edge& e : b.graph.Edges()) EXPECT_EQ(b.planted[e.u], b.planted[e.v]);
}

TEST(GeneratePlantedTest, TooManyEdgesRejected) {
  EXPECT_THROW(GeneratePlanted(BenchmarkSpec::Parse("n=10,size=5,k=9,mu=0")),
               ValidationError);
}

TEST(ResolutionForMuTest, MidpointOfDensities) {
  const BenchmarkSpec s = BenchmarkSpec::Parse("n=5000,size=50,k=10,mu=0.3");
  const MuResolution r = ResolutionForMu(s);
  // 100 blocks of 50: 122500 pairs inside, the rest of 12497500 between.
  EXPECT_NEAR(r.p_in, 0.7 * 25000 / 122500.0, 1e-15);
  EXPECT_NEAR(r.p_out, 0.3 * 25000 / (12497500.0 - 122500.0), 1e-15);
  EXPECT_NEAR(r.gamma, (r.p_in + r.p_out) / 2, 1e-15);
  EXPECT_NEAR(r.gamma, 0.0717, 1e-4);
}

TEST(GenerateHubGadgetsTest, Shape) {
  const Graph g = GenerateHubGadgets({3, 4, 11});
  EXPECT_GE(g.node_count(), 3 * (1 + 6 * 6));
  EXPECT_LE(g.node_count(), 3 * (1 + 6 * 7));
  EXPECT_EQ(g.neighbors(0).size(), 6u);
  EXPECT_EQ(ConnectedComponents(g).size(), 1u);
}

TEST(GenerateHubGadgetsTest, SeedDeterminesGraph) {
  const Graph a = GenerateHubGadgets({4, 3, 5});
  const Graph b = GenerateHubGadgets({4, 3, 5});
  const Graph c = GenerateHubGadgets({4, 3, 6});
  EXPECT_EQ(a.node_count(), b.node_count());
  EXPECT_EQ(a.total_edge_weight(), b.total_edge_weight());
  EXPECT_NE(a.total_edge_weight(), c.total_edge_weight());
  EXPECT_THROW(GenerateHubGadgets({4, 1, 5}), ValidationError);
  EXPECT_THROW(GenerateHubGadgets({0, 3, 5}), ValidationError);
}

TEST(FixtureTest, KnownFixtures) {
  const auto names = FixtureNames();
  EXPECT_EQ(names.size(), 2u);
  for (const auto& name : names) {
    const Fixture f = MakeFixture(name);
    EXPECT_EQ(f.name, name);
    for (const auto& p : f.partitions) {
      EXPECT_EQ(static_cast<NodeId>(p.labels.size()), f.graph.node_count());
      EXPECT_NEAR(Quality(Partition::FromLabels(f.graph, p.labels),
                          QualityConfig::Cpm(f.gamma)),
                  p.quality, 1e-12);
    }
  }
  EXPECT_THROW(MakeFixture("appendix_z"), ValidationError);
}

TEST(FixtureTest, AppendixBShape) {
  const Fixture f = MakeFixture("appendix_b");
  EXPECT_EQ(f.graph.node_count(), 12);
  EXPECT_EQ(DegreeWeight(f.graph, 0), 9.0);
  EXPECT_EQ(f.graph.total_edge_weight(), 2 + 2 + 4 + 5 + 10);
  EXPECT_EQ(f.visit_order.size(), 12u);
}

TEST(FixtureTest, AppendixCShape) {
  const Fixture f = MakeFixture("appendix_c");
  EXPECT_EQ(f.graph.node_count(), 8);
  EXPECT_EQ(f.graph.total_edge_weight(), 30.0);
  EXPECT_EQ(f.gamma, 1.0);
}

}  // namespace
}  // namespace commdet
