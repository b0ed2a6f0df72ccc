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

#ifndef COMMDET_BENCHGEN_H_
#define COMMDET_BENCHGEN_H_

#include <cstdint>
#include <string>
#include <vector>

#include "commdet/graph.h"
#include "commdet/partition.h"

namespace commdet {

// Planted-partition benchmark: equal-size communities (the last one may be
// smaller), a target mean degree, and mixing probability mu.
struct BenchmarkSpec {
  NodeId n = 1000;
  NodeId community_size = 50;
  double mean_degree = 10.0;
  double mu = 0.3;
  std::uint64_t seed = 0;

  // Parses "n=1000,size=50,k=10,mu=0.3[,seed=7]"; omitted keys keep their
  // defaults.
  static BenchmarkSpec Parse(const std::string& text);
  void Validate() const;
  std::string ToString() const;

  std::int64_t edge_count() const;
  NodeId community_count() const;
  // Node pairs inside communities and between them.
  double intra_pairs() const;
  double inter_pairs() const;
};

struct PlantedBenchmark {
  Graph graph;
  // Planted community of every node.
  std::vector<CommunityId> planted;
};

// Draws round(n k / 2) distinct edges. Each edge is placed inside a uniformly
// chosen community with probability 1 - mu, else between two distinct
// communities; node pairs are uniform and duplicates are redrawn.
PlantedBenchmark GeneratePlanted(const BenchmarkSpec& spec);

struct MuResolution {
  double p_in = 0.0;   // planted density inside communities
  double p_out = 0.0;  // planted density between communities
  double gamma = 0.0;  // (p_in + p_out) / 2
};

// CPM resolution halfway between the expected densities inside and between
// planted communities.
MuResolution ResolutionForMu(const BenchmarkSpec& spec);

// Copies of a hub gadget: a hub joins two heavy cliques and has single
// lighter links into `satellites` further cliques that are linked to one
// another. Cliques have 6 or 7 nodes and edge weight uniform in [3, 4]; every
// weight is jittered by up to 5%. Consecutive gadgets share a weight-0.5 edge.
struct HubGadgetSpec {
  int gadgets = 8;
  int satellites = 4;
  std::uint64_t seed = 0;
};

Graph GenerateHubGadgets(const HubGadgetSpec& spec);

// Small weighted graphs with known behaviour.
struct Fixture {
  std::string name;
  Graph graph;
  double gamma = 1.0;
  // Louvain sweep order that exposes the fixture's failure mode (may be
  // empty).
  std::vector<NodeId> visit_order;
  struct KnownPartition {
    std::string name;
    std::vector<std::int64_t> labels;
    double quality;
  };
  std::vector<KnownPartition> partitions;
};

// "appendix_b": a community that Louvain disconnects.
// "appendix_c": a graph whose optimum no greedy move sequence reaches.
Fixture MakeFixture(const std::string& name);
std::vector<std::string> FixtureNames();

}  // namespace commdet

#endif  // COMMDET_BENCHGEN_H_
