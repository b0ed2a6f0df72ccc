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

#include "commdet/benchgen.h"

#include <cmath>
#include <random>
#include <sstream>
#include <unordered_set>

#include "commdet/errors.h"

namespace commdet {

BenchmarkSpec BenchmarkSpec::Parse(const std::string& text) {
  BenchmarkSpec spec;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("benchmark spec: expected key=value, got \"" + item + "\"");
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    try {
      if (key == "n") {
        spec.n = static_cast<NodeId>(std::stol(value, &used));
      } else if (key == "size") {
        spec.community_size = static_cast<NodeId>(std::stol(value, &used));
      } else if (key == "k") {
        spec.mean_degree = std::stod(value, &used);
      } else if (key == "mu") {
        spec.mu = std::stod(value, &used);
      } else if (key == "seed") {
        spec.seed = std::stoull(value, &used);
      } else {
        throw ValidationError("benchmark spec: unknown key \"" + key + "\"");
      }
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const ValidationError*>(&e) != nullptr) throw;
      throw ValidationError("benchmark spec: bad value for \"" + key + "\"");
    }
    if (used != value.size()) {
      throw ValidationError("benchmark spec: bad value for \"" + key + "\"");
    }
  }
  spec.Validate();
  return spec;
}

void BenchmarkSpec::Validate() const {
  if (n < 1) throw ValidationError("benchmark spec: n must be positive");
  if (community_size < 1) {
    throw ValidationError("benchmark spec: community size must be positive");
  }
  if (!(mean_degree >= 0.0) || !std::isfinite(mean_degree)) {
    throw ValidationError("benchmark spec: mean degree must be >= 0");
  }
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw ValidationError("benchmark spec: mu must lie in [0, 1]");
  }
}

std::string BenchmarkSpec::ToString() const {
  std::ostringstream out;
  out << "n=" << n << ",size=" << community_size << ",k=" << mean_degree
      << ",mu=" << mu << ",seed=" << seed;
  return out.str();
}

std::int64_t BenchmarkSpec::edge_count() const {
  return std::llround(static_cast<double>(n) * mean_degree / 2.0);
}

NodeId BenchmarkSpec::community_count() const {
  return (n + community_size - 1) / community_size;
}

double BenchmarkSpec::intra_pairs() const {
  const NodeId full = n / community_size;
  const NodeId last = n % community_size;
  const double s = community_size;
  return full * s * (s - 1.0) / 2.0 + static_cast<double>(last) * (last - 1.0) / 2.0;
}

double BenchmarkSpec::inter_pairs() const {
  const double all = static_cast<double>(n) * (n - 1.0) / 2.0;
  return all - intra_pairs();
}

PlantedBenchmark GeneratePlanted(const BenchmarkSpec& spec) {
  spec.Validate();
  const NodeId n = spec.n;
  const NodeId s = spec.community_size;
  const NodeId communities = spec.community_count();
  const std::int64_t m = spec.edge_count();

  std::mt19937_64 rng(spec.seed);
  const std::int64_t intra =
      std::binomial_distribution<std::int64_t>(m, 1.0 - spec.mu)(rng);
  const std::int64_t inter = m - intra;
  if (static_cast<double>(intra) > spec.intra_pairs() ||
      static_cast<double>(inter) > spec.inter_pairs()) {
    throw ValidationError("benchmark spec: more edges than node pairs available");
  }

  auto first = [&](NodeId c) { return c * s; };
  auto size_of = [&](NodeId c) { return std::min(s, n - c * s); };
  std::uniform_int_distribution<NodeId> pick_community(0, communities - 1);
  std::uniform_int_distribution<NodeId> pick_node(0, n - 1);

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(static_cast<std::size_t>(m) * 2);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  auto add = [&](NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    const std::uint64_t key = static_cast<std::uint64_t>(u) * n + v;
    if (!seen.insert(key).second) return false;
    edges.push_back({u, v, 1.0});
    return true;
  };

  for (std::int64_t e = 0; e < intra;) {
    const NodeId c = pick_community(rng);
    const NodeId size = size_of(c);
    if (size < 2) continue;
    std::uniform_int_distribution<NodeId> member(0, size - 1);
    const NodeId u = first(c) + member(rng);
    const NodeId v = first(c) + member(rng);
    if (u != v && add(u, v)) ++e;
  }
  for (std::int64_t e = 0; e < inter;) {
    const NodeId u = pick_node(rng);
    const NodeId v = pick_node(rng);
    if (u / s != v / s && add(u, v)) ++e;
  }

  PlantedBenchmark out;
  out.graph = Graph::FromEdges(n, edges);
  out.planted.resize(n);
  for (NodeId v = 0; v < n; ++v) out.planted[v] = v / s;
  return out;
}

MuResolution ResolutionForMu(const BenchmarkSpec& spec) {
  spec.Validate();
  const double m = static_cast<double>(spec.edge_count());
  MuResolution r;
  const double intra = spec.intra_pairs();
  const double inter = spec.inter_pairs();
  r.p_in = intra > 0.0 ? (1.0 - spec.mu) * m / intra : 0.0;
  r.p_out = inter > 0.0 ? spec.mu * m / inter : 0.0;
  r.gamma = (r.p_in + r.p_out) / 2.0;
  return r;
}

Graph GenerateHubGadgets(const HubGadgetSpec& spec) {
  if (spec.gadgets < 1 || spec.satellites < 2) {
    throw ValidationError("hub gadgets: need at least 1 gadget and 2 satellites");
  }
  constexpr double kHubWeight = 3.0;
  constexpr double kSatelliteWeight = 2.0;
  constexpr double kSatelliteLinkWeight = 3.0;
  constexpr double kGadgetLinkWeight = 0.5;
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> jitter(0.95, 1.05);
  std::uniform_int_distribution<NodeId> pick_size(6, 7);
  std::uniform_real_distribution<double> pick_weight(3.0, 4.0);

  std::vector<Edge> edges;
  NodeId n = 0;
  NodeId size = 0;
  double weight = 0.0;
  auto clique = [&] {
    const NodeId base = n;
    n += size;
    for (NodeId i = 0; i < size; ++i) {
      for (NodeId j = i + 1; j < size; ++j) {
        edges.push_back({base + i, base + j, weight * jitter(rng)});
      }
    }
    return base;
  };
  std::vector<NodeId> hubs;
  for (int g = 0; g < spec.gadgets; ++g) {
    size = pick_size(rng);
    weight = pick_weight(rng);
    const NodeId hub = n++;
    hubs.push_back(hub);
    const NodeId a = clique();
    const NodeId b = clique();
    edges.push_back({hub, a, kHubWeight * jitter(rng)});
    edges.push_back({hub, b, kHubWeight * jitter(rng)});
    std::vector<NodeId> satellites;
    for (int i = 0; i < spec.satellites; ++i) {
      const NodeId x = clique();
      satellites.push_back(x);
      edges.push_back({hub, x, kSatelliteWeight * jitter(rng)});
    }
    for (int i = 0; i < spec.satellites; ++i) {
      for (int j = i + 1; j < spec.satellites; ++j) {
        edges.push_back({satellites[i] + 1, satellites[j] + 2,
                         kSatelliteLinkWeight * jitter(rng)});
      }
    }
  }
  const int links = spec.gadgets > 2 ? spec.gadgets : spec.gadgets - 1;
  for (int g = 0; g < links; ++g) {
    edges.push_back({hubs[g] + 1, hubs[(g + 1) % spec.gadgets] + 2, kGadgetLinkWeight});
  }
  return Graph::FromEdges(n, edges);
}

namespace {

Fixture AppendixB() {
  Fixture f;
  f.name = "appendix_b";
  f.gamma = 1.0 / 7.0;
  std::vector<Edge> edges = {
      {0, 1, 2.0}, {0, 4, 2.0}, {1, 2, 1.0}, {1, 3, 1.0},
      {4, 5, 1.0}, {4, 6, 1.0},
  };
  // Five mutually linked nodes, each also linked to node 0.
  for (NodeId u = 7; u <= 11; ++u) {
    edges.push_back({0, u, 1.0});
    for (NodeId v = u + 1; v <= 11; ++v) edges.push_back({u, v, 1.0});
  }
  f.graph = Graph::FromEdges(12, edges);
  f.visit_order = {1, 4, 2, 3, 5, 6, 7, 8, 9, 10, 11, 0};
  f.partitions.push_back(
      {"before", {0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1}, 95.0 / 7.0});
  f.partitions.push_back(
      {"after", {0, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0}, 103.0 / 7.0});
  return f;
}

Fixture AppendixC() {
  Fixture f;
  f.name = "appendix_c";
  f.gamma = 1.0;
  const std::vector<Edge> edges = {
      {0, 1, 3.0},
      {2, 3, 3.0}, {2, 4, 3.0}, {3, 4, 3.0},
      {5, 6, 3.0}, {5, 7, 3.0}, {6, 7, 3.0},
      {0, 2, 1.5}, {0, 3, 1.5}, {0, 4, 1.5},
      {1, 5, 1.5}, {1, 6, 1.5}, {1, 7, 1.5},
  };
  f.graph = Graph::FromEdges(8, edges);
  f.partitions.push_back({"greedy", {0, 0, 1, 1, 1, 2, 2, 2}, 14.0});
  f.partitions.push_back({"optimal", {0, 1, 0, 0, 0, 1, 1, 1}, 15.0});
  return f;
}

}  // namespace

Fixture MakeFixture(const std::string& name) {
  if (name == "appendix_b") return AppendixB();
  if (name == "appendix_c") return AppendixC();
  throw ValidationError("unknown fixture: " + name);
}

std::vector<std::string> FixtureNames() { return {"appendix_b", "appendix_c"}; }

}  // namespace commdet
