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

#include "commdet/verify.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_map>
#include <utility>

#include "commdet/errors.h"
#include "json.hpp"

namespace commdet {
namespace {

constexpr int kMaxExactLimit = 24;
constexpr std::uint64_t kSeedMix = 0x9e3779b97f4a7c15ULL;

// A community copied into local indices 0..k-1.
struct LocalCommunity {
  std::vector<NodeId> nodes;
  std::vector<double> size;
  std::vector<double> loop;
  // Weight to other members, self-loops excluded.
  std::vector<double> inner_degree;
  std::vector<std::vector<std::pair<int, double>>> adj;
  double total_size = 0.0;

  int k() const { return static_cast<int>(nodes.size()); }
};

LocalCommunity MakeLocal(const Graph& g, const NodeSet& c) {
  LocalCommunity local;
  local.nodes.assign(c.begin(), c.end());
  const int k = local.k();
  local.size.resize(k);
  local.loop.resize(k);
  local.inner_degree.assign(k, 0.0);
  local.adj.resize(k);
  for (int i = 0; i < k; ++i) {
    const NodeId v = local.nodes[i];
    local.size[i] = g.node_size(v);
    local.loop[i] = g.self_loop(v);
    local.total_size += local.size[i];
    for (const Graph::Neighbor& nb : g.neighbors(v)) {
      auto it = std::lower_bound(local.nodes.begin(), local.nodes.end(), nb.node);
      if (it == local.nodes.end() || *it != nb.node) continue;
      local.adj[i].emplace_back(static_cast<int>(it - local.nodes.begin()),
                                nb.weight);
      local.inner_degree[i] += nb.weight;
    }
  }
  return local;
}

bool AllPositiveSizes(const LocalCommunity& local) {
  return std::all_of(local.size.begin(), local.size.end(),
                     [](double s) { return s > 0.0; });
}

// Internal weight and size of every subset of a small community.
class SubsetTables {
 public:
  SubsetTables(const LocalCommunity& local, double r)
      : r_(r), k_(local.k()), full_((1u << k_) - 1) {
    inner_.assign(std::size_t{1} << k_, 0.0);
    size_.assign(std::size_t{1} << k_, 0.0);
    for (std::uint32_t mask = 1; mask <= full_; ++mask) {
      const int b = std::countr_zero(mask);
      const std::uint32_t rest = mask & (mask - 1);
      double w = local.loop[b];
      for (const auto& [j, wj] : local.adj[b]) {
        if (rest >> j & 1u) w += wj;
      }
      inner_[mask] = inner_[rest] + w;
      size_[mask] = size_[rest] + local.size[b];
    }
  }

  std::uint32_t full() const { return full_; }
  double size(std::uint32_t mask) const { return size_[mask]; }
  double Between(std::uint32_t a, std::uint32_t b) const {
    return inner_[a | b] - inner_[a] - inner_[b];
  }
  // E(S, C - S) >= r ||S|| ||C - S||, i.e. S gains nothing by leaving.
  bool CannotLeave(std::uint32_t mask) const {
    const std::uint32_t comp = full_ ^ mask;
    if (comp == 0) return true;
    return CheckGe(Between(mask, comp), r_ * size_[mask] * size_[comp]);
  }
  double r() const { return r_; }

 private:
  double r_;
  int k_;
  std::uint32_t full_;
  std::vector<double> inner_;
  std::vector<double> size_;
};

// Recursive split search: with `density` false this decides
// gamma-connectivity, with `density` true subpartition density.
class SplitSearch {
 public:
  SplitSearch(const SubsetTables& t, bool density)
      : t_(t), density_(density), memo_(std::size_t{t.full()} + 1, -1) {}

  bool Ok(std::uint32_t mask) {
    std::int8_t& m = memo_[mask];
    if (m >= 0) return m != 0;
    m = Compute(mask) ? 1 : 0;
    return m != 0;
  }

 private:
  bool Compute(std::uint32_t mask) {
    if (density_ && !t_.CannotLeave(mask)) return false;
    if (std::has_single_bit(mask)) return true;
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t rest = mask ^ low;
    for (std::uint32_t sub = (rest - 1) & rest;; sub = (sub - 1) & rest) {
      const std::uint32_t a = low | sub;
      const std::uint32_t b = mask ^ a;
      if (CheckGe(t_.Between(a, b), t_.r() * t_.size(a) * t_.size(b)) &&
          Ok(a) && Ok(b)) {
        return true;
      }
      if (sub == 0) break;
    }
    return false;
  }

  const SubsetTables& t_;
  bool density_;
  std::vector<std::int8_t> memo_;
};

int ClampedLimit(const VerifyOptions& opts) {
  return std::clamp(opts.exact_limit, 1, kMaxExactLimit);
}

// Builds the community one node at a time so that every prefix is joined to
// the next node with weight at least r ||v|| ||prefix||. With `density`
// every prefix and every node must also be unable to leave. Such an order
// proves the property.
bool GreedyChain(const LocalCommunity& local, double r, bool density, Rng& rng,
                 int tries) {
  const int k = local.k();
  if (k <= 1) return true;
  std::vector<int> starts(k);
  std::iota(starts.begin(), starts.end(), 0);
  std::shuffle(starts.begin(), starts.end(), rng);
  auto best_start = std::max_element(local.inner_degree.begin(),
                                     local.inner_degree.end());
  std::swap(starts[0], *std::find(starts.begin(), starts.end(),
                                  static_cast<int>(best_start -
                                                   local.inner_degree.begin())));
  tries = std::min(tries, k);
  std::vector<double> to_set(k);
  std::vector<char> in_set(k);
  for (int attempt = 0; attempt < tries; ++attempt) {
    std::fill(to_set.begin(), to_set.end(), 0.0);
    std::fill(in_set.begin(), in_set.end(), 0);
    const int s0 = starts[attempt];
    in_set[s0] = 1;
    double set_size = local.size[s0];
    double cut = local.inner_degree[s0];
    for (const auto& [j, w] : local.adj[s0]) to_set[j] += w;
    bool ok = true;
    for (int step = 1; step < k && ok; ++step) {
      int pick = -1;
      double best = -std::numeric_limits<double>::infinity();
      for (int v = 0; v < k; ++v) {
        if (in_set[v]) continue;
        const double gain = to_set[v] - r * local.size[v] * set_size;
        if (gain > best) {
          best = gain;
          pick = v;
        }
      }
      if (!CheckGe(to_set[pick], r * local.size[pick] * set_size)) {
        ok = false;
        break;
      }
      in_set[pick] = 1;
      cut += local.inner_degree[pick] - 2.0 * to_set[pick];
      set_size += local.size[pick];
      for (const auto& [j, w] : local.adj[pick]) to_set[j] += w;
      if (density && step + 1 < k &&
          !CheckGe(cut, r * set_size * (local.total_size - set_size))) {
        ok = false;
      }
    }
    if (ok) return true;
  }
  return false;
}

// Validates a merge tree over exactly the community's nodes.
bool TreeCertifies(const LocalCommunity& local, double r,
                   bool density, const MergeForest& forest, std::int64_t tree) {
  if (tree < 0 || tree >= forest.size()) return false;
  const std::vector<NodeId> leaves = forest.Leaves(tree);
  if (leaves != local.nodes) return false;
  const int k = local.k();
  // Internal tree nodes below `tree`, children before parents.
  std::vector<std::int64_t> internal;
  std::vector<std::int64_t> stack{tree};
  while (!stack.empty()) {
    const std::int64_t t = stack.back();
    stack.pop_back();
    if (forest.is_leaf(t)) continue;
    internal.push_back(t);
    stack.push_back(forest.children(t).first);
    stack.push_back(forest.children(t).second);
  }
  std::sort(internal.begin(), internal.end());

  struct Group {
    std::vector<int> members;
    double size = 0.0;
    double volume = 0.0;  // sum of inner degrees
    double inner = 0.0;   // internal weight without self-loops
  };
  std::vector<Group> groups(k);
  std::unordered_map<std::int64_t, int> group_of_tree;
  std::vector<int> owner(k);
  for (int i = 0; i < k; ++i) {
    owner[i] = i;
    group_of_tree[local.nodes[i]] = i;
    Group& grp = groups[i];
    grp.members = {i};
    grp.size = local.size[i];
    grp.volume = local.inner_degree[i];
    if (density && k > 1 &&
        !CheckGe(grp.volume, r * grp.size * (local.total_size - grp.size))) {
      return false;
    }
  }
  for (std::int64_t t : internal) {
    int a = group_of_tree.at(forest.children(t).first);
    int b = group_of_tree.at(forest.children(t).second);
    if (groups[a].members.size() > groups[b].members.size()) std::swap(a, b);
    Group& small = groups[a];
    Group& large = groups[b];
    double between = 0.0;
    for (int i : small.members) {
      for (const auto& [j, w] : local.adj[i]) {
        if (owner[j] == b) between += w;
      }
    }
    if (!CheckGe(between, r * small.size * large.size)) return false;
    for (int i : small.members) {
      owner[i] = b;
      large.members.push_back(i);
    }
    large.size += small.size;
    large.volume += small.volume;
    large.inner += small.inner + between;
    small = Group();
    group_of_tree[t] = b;
    if (density && t != tree) {
      const double cut = large.volume - 2.0 * large.inner;
      if (!CheckGe(cut, r * large.size * (local.total_size - large.size))) {
        return false;
      }
    }
  }
  return true;
}

// Sets grown from random seeds by adding random frontier nodes; `visit` is
// called with each prefix and returns false to stop.
void GrowRandomSets(
    const LocalCommunity& local, int budget, Rng& rng,
    const std::function<bool(const std::vector<int>& added, double size,
                             double cut)>& visit) {
  const int k = local.k();
  std::vector<char> in_set(k);
  std::vector<char> on_frontier(k);
  std::vector<double> to_set(k);
  std::vector<int> added;
  std::vector<int> frontier;
  std::uniform_int_distribution<int> pick_node(0, k - 1);
  int evaluated = 0;
  while (evaluated < budget) {
    std::fill(in_set.begin(), in_set.end(), 0);
    std::fill(on_frontier.begin(), on_frontier.end(), 0);
    std::fill(to_set.begin(), to_set.end(), 0.0);
    added.clear();
    frontier.assign(1, pick_node(rng));
    on_frontier[frontier[0]] = 1;
    double size = 0.0;
    double cut = 0.0;
    while (!frontier.empty() && static_cast<int>(added.size()) + 1 < k) {
      const std::size_t idx =
          std::uniform_int_distribution<std::size_t>(0, frontier.size() - 1)(rng);
      const int v = frontier[idx];
      frontier[idx] = frontier.back();
      frontier.pop_back();
      in_set[v] = 1;
      added.push_back(v);
      size += local.size[v];
      cut += local.inner_degree[v] - 2.0 * to_set[v];
      for (const auto& [j, w] : local.adj[v]) {
        to_set[j] += w;
        if (!in_set[j] && !on_frontier[j]) {
          on_frontier[j] = 1;
          frontier.push_back(j);
        }
      }
      ++evaluated;
      if (!visit(added, size, cut)) return;
      if (evaluated >= budget) return;
    }
  }
}

CheckResult Pass(Method m) { return {Verdict::kPass, m}; }
CheckResult Fail(Method m) { return {Verdict::kFail, m}; }

std::optional<std::int64_t> TreeFor(const VerifyOptions& opts, std::size_t i) {
  if (opts.forest == nullptr || opts.community_tree == nullptr) return {};
  if (i >= opts.community_tree->size() || (*opts.community_tree)[i] < 0) return {};
  return (*opts.community_tree)[i];
}

CheckResult SplitCheck(const Graph& g, const NodeSet& c, double r,
                       const VerifyOptions& opts, std::optional<std::int64_t> tree,
                       bool density) {
  const LocalCommunity local = MakeLocal(g, c);
  const int k = local.k();
  if (k <= 1) return Pass(Method::kExact);
  if (k <= ClampedLimit(opts)) {
    const SubsetTables t(local, r);
    SplitSearch search(t, density);
    return search.Ok(t.full()) ? Pass(Method::kExact) : Fail(Method::kExact);
  }
  if (AllPositiveSizes(local) && r > 0.0 &&
      ConnectedComponents(g, c).size() > 1) {
    return Fail(Method::kExact);
  }
  if (density) {
    for (int i = 0; i < k; ++i) {
      if (!CheckGe(local.inner_degree[i],
                   r * local.size[i] * (local.total_size - local.size[i]))) {
        return Fail(Method::kExact);
      }
    }
  }
  if (tree.has_value() && opts.forest != nullptr &&
      TreeCertifies(local, r, density, *opts.forest, *tree)) {
    return Pass(Method::kCertificate);
  }
  Rng rng(opts.seed ^ (static_cast<std::uint64_t>(c[0]) * kSeedMix));
  if (GreedyChain(local, r, density, rng, 8)) return Pass(Method::kCertificate);
  return {Verdict::kUnknown, Method::kSampled};
}

// Subset optimality of one community; `to_other` lists, per member, the
// weights to each other community.
CheckResult SubsetOptimalityOf(
    const Partition& p, const QualityConfig& q, const NodeSet& c,
    const VerifyOptions& opts, bool node_optimal) {
  const Graph& g = p.graph();
  const double r = q.resolution();
  const LocalCommunity local = MakeLocal(g, c);
  const int k = local.k();
  const CommunityId own = p.community_of(c[0]);

  // Weight from each member to every other adjacent community.
  std::unordered_map<CommunityId, std::vector<double>> to_other;
  for (int i = 0; i < k; ++i) {
    for (const Graph::Neighbor& nb : g.neighbors(local.nodes[i])) {
      const CommunityId d = p.community_of(nb.node);
      if (d == own) continue;
      auto& w = to_other[d];
      if (w.empty()) w.assign(k, 0.0);
      w[i] += nb.weight;
    }
  }

  if (k <= ClampedLimit(opts)) {
    const SubsetTables t(local, r);
    const std::uint32_t full = t.full();
    for (std::uint32_t s = 1; s <= full; ++s) {
      if (!t.CannotLeave(s)) return Fail(Method::kBruteForce);
    }
    std::vector<double> joined(std::size_t{full} + 1);
    for (const auto& [d, w] : to_other) {
      const double size_d = p.size_sum(d);
      for (std::uint32_t s = 1; s <= full; ++s) {
        const int b = std::countr_zero(s);
        joined[s] = joined[s & (s - 1)] + w[b];
        const std::uint32_t comp = full ^ s;
        const double stay = t.Between(s, comp) + r * t.size(s) * size_d;
        const double move = joined[s] + r * t.size(s) * t.size(comp);
        if (!CheckGe(stay, move)) return Fail(Method::kBruteForce);
      }
    }
    return Pass(Method::kBruteForce);
  }

  if (!node_optimal) return Fail(Method::kExact);
  if (AllPositiveSizes(local) && r > 0.0 && ConnectedComponents(g, c).size() > 1) {
    return Fail(Method::kExact);
  }
  // Search grown sets for an improving move.
  Rng rng(opts.seed ^ (static_cast<std::uint64_t>(c[0]) * kSeedMix) ^ 1u);
  bool violated = false;
  std::unordered_map<CommunityId, double> ext;
  std::size_t last_len = 0;
  GrowRandomSets(local, opts.sample_budget, rng,
                 [&](const std::vector<int>& added, double size, double cut) {
                   if (added.size() < last_len || added.size() == 1) ext.clear();
                   last_len = added.size();
                   const int v = added.back();
                   for (const auto& [d, w] : to_other) {
                     if (w[v] != 0.0) ext[d] += w[v];
                   }
                   const double rest = local.total_size - size;
                   if (!CheckGe(cut, r * size * rest)) {
                     violated = true;
                     return false;
                   }
                   for (const auto& [d, w] : ext) {
                     if (!CheckGe(cut + r * size * p.size_sum(d),
                                  w + r * size * rest)) {
                       violated = true;
                       return false;
                     }
                   }
                   return true;
                 });
  if (violated) return Fail(Method::kSampled);
  return {Verdict::kUnknown, Method::kSkippedTooLarge};
}

Verdict Combine(const std::vector<CommunityReport>& cs,
                CheckResult CommunityReport::*field) {
  Verdict v = Verdict::kPass;
  for (const CommunityReport& c : cs) {
    const Verdict x = (c.*field).verdict;
    if (x == Verdict::kFail) return Verdict::kFail;
    if (x == Verdict::kUnknown) v = Verdict::kUnknown;
  }
  return v;
}

}  // namespace

std::string ToString(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kUnknown:
      return "unknown";
  }
  return "unknown";
}

std::string ToString(Method m) {
  switch (m) {
    case Method::kExact:
      return "exact";
    case Method::kBruteForce:
      return "brute-force";
    case Method::kCertificate:
      return "certificate";
    case Method::kSampled:
      return "sampled";
    case Method::kSkippedTooLarge:
      return "skipped-too-large";
  }
  return "skipped-too-large";
}

bool CheckGe(double a, double b) {
  return a >= b - 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

std::vector<SeparationViolation> FindSeparationViolations(
    const Partition& p, const QualityConfig& q) {
  const Graph& g = p.graph();
  std::unordered_map<std::uint64_t, double> between;
  const auto cap = static_cast<std::uint64_t>(p.capacity());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const CommunityId c = p.community_of(v);
    for (const Graph::Neighbor& nb : g.neighbors(v)) {
      const CommunityId d = p.community_of(nb.node);
      if (c < d) between[static_cast<std::uint64_t>(c) * cap + d] += nb.weight;
    }
  }
  const double r = q.resolution();
  std::vector<SeparationViolation> out;
  for (const auto& [key, w] : between) {
    const auto c = static_cast<CommunityId>(key / cap);
    const auto d = static_cast<CommunityId>(key % cap);
    const double cost = r * p.size_sum(c) * p.size_sum(d);
    if (!CheckGe(cost, w)) out.push_back({c, d, w - cost});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.c != b.c ? a.c < b.c : a.d < b.d;
  });
  return out;
}

bool CheckGammaSeparation(const Partition& p, const QualityConfig& q) {
  return FindSeparationViolations(p, q).empty();
}

std::vector<NodeId> FindNodeOptimalityViolations(const Partition& p,
                                                 const QualityConfig& q) {
  const Graph& g = p.graph();
  const double r = q.resolution();
  std::vector<double> weight(p.capacity(), 0.0);
  std::vector<CommunityId> touched;
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    touched.clear();
    for (const Graph::Neighbor& nb : g.neighbors(v)) {
      const CommunityId c = p.community_of(nb.node);
      if (weight[c] == 0.0) touched.push_back(c);
      weight[c] += nb.weight;
    }
    const CommunityId own = p.community_of(v);
    const double sv = g.node_size(v);
    const double w_own = weight[own];
    // Staying must be at least as good as leaving for an empty community.
    const double stay_gain = w_own;
    const double stay_cost = r * sv * (p.size_sum(own) - sv);
    bool ok = p.member_count(own) == 1 || CheckGe(stay_gain, stay_cost);
    for (CommunityId c : touched) {
      if (c == own || !ok) continue;
      ok = CheckGe(w_own + r * sv * p.size_sum(c), weight[c] + stay_cost);
    }
    for (CommunityId c : touched) weight[c] = 0.0;
    weight[own] = 0.0;
    if (!ok) out.push_back(v);
  }
  return out;
}

bool CheckNodeOptimality(const Partition& p, const QualityConfig& q) {
  return FindNodeOptimalityViolations(p, q).empty();
}

CheckResult CheckGammaConnectivity(const Graph& g, const NodeSet& c, double r,
                                   const VerifyOptions& opts,
                                   std::optional<std::int64_t> tree) {
  return SplitCheck(g, c, r, opts, tree, false);
}

CheckResult CheckSubpartitionDensity(const Graph& g, const NodeSet& c, double r,
                                     const VerifyOptions& opts,
                                     std::optional<std::int64_t> tree) {
  return SplitCheck(g, c, r, opts, tree, true);
}

CheckResult CheckUniformDensity(const Graph& g, const NodeSet& c, double r,
                                const VerifyOptions& opts) {
  const LocalCommunity local = MakeLocal(g, c);
  const int k = local.k();
  if (k <= 1) return Pass(Method::kExact);
  if (k <= ClampedLimit(opts)) {
    const SubsetTables t(local, r);
    for (std::uint32_t s = 1; s < t.full(); ++s) {
      if (!t.CannotLeave(s)) return Fail(Method::kBruteForce);
    }
    return Pass(Method::kBruteForce);
  }
  for (int i = 0; i < k; ++i) {
    if (!CheckGe(local.inner_degree[i],
                 r * local.size[i] * (local.total_size - local.size[i]))) {
      return Fail(Method::kExact);
    }
  }
  if (AllPositiveSizes(local) && r > 0.0 && ConnectedComponents(g, c).size() > 1) {
    return Fail(Method::kExact);
  }
  Rng rng(opts.seed ^ (static_cast<std::uint64_t>(c[0]) * kSeedMix) ^ 2u);
  bool violated = false;
  GrowRandomSets(local, opts.sample_budget, rng,
                 [&](const std::vector<int>&, double size, double cut) {
                   if (!CheckGe(cut, r * size * (local.total_size - size))) {
                     violated = true;
                     return false;
                   }
                   return true;
                 });
  // Uniformly random subsets.
  std::bernoulli_distribution coin(0.5);
  std::vector<char> in_set(k);
  for (int trial = 0; trial < 1024 && !violated; ++trial) {
    double size = 0.0;
    for (int i = 0; i < k; ++i) {
      in_set[i] = coin(rng);
      if (in_set[i]) size += local.size[i];
    }
    double cut = 0.0;
    for (int i = 0; i < k; ++i) {
      if (!in_set[i]) continue;
      for (const auto& [j, w] : local.adj[i]) {
        if (!in_set[j]) cut += w;
      }
    }
    if (size > 0.0 && size < local.total_size &&
        !CheckGe(cut, r * size * (local.total_size - size))) {
      violated = true;
    }
  }
  return violated ? Fail(Method::kSampled) : Pass(Method::kSampled);
}

std::vector<CheckResult> CheckSubsetOptimality(const Partition& p,
                                               const QualityConfig& q,
                                               const VerifyOptions& opts) {
  std::vector<char> bad_node(p.capacity(), 0);
  for (NodeId v : FindNodeOptimalityViolations(p, q)) {
    bad_node[p.community_of(v)] = 1;
  }
  std::vector<CheckResult> out;
  for (const NodeSet& c : p.CommunitySets()) {
    out.push_back(
        SubsetOptimalityOf(p, q, c, opts, !bad_node[p.community_of(c[0])]));
  }
  return out;
}

GapBound OptimalityGapBound(const Partition& p, const QualityConfig& q,
                            bool uniformly_dense_exact) {
  const Graph& g = p.graph();
  GapBound out;
  const double r = q.resolution();
  double scale = 1.0;
  bool assumptions = true;
  if (q.kind == QualityKind::kCpm) {
    scale = g.max_edge_weight() > 0.0 ? g.max_edge_weight() : 1.0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (g.node_size(v) < 1.0) assumptions = false;
    }
    if (!assumptions) out.note = "node sizes below 1";
  } else {
    // Degrees bound pair weights once every edge weighs at least 1.
    double min_weight = std::numeric_limits<double>::infinity();
    for (const Edge& e : g.Edges()) {
      if (e.weight > 0.0) min_weight = std::min(min_weight, e.weight);
    }
    if (std::isfinite(min_weight) && min_weight < 1.0) scale = 1.0 / min_weight;
  }
  out.max_weight = scale;
  out.factor = r / scale;
  double internal = 0.0;
  double deficit = 0.0;
  for (CommunityId c = 0; c < p.capacity(); ++c) {
    if (p.member_count(c) == 0) continue;
    internal += p.internal_weight(c);
    deficit += r * Binom2(p.size_sum(c)) - out.factor * p.internal_weight(c);
  }
  const double m = g.total_edge_weight();
  const double inter = m - internal;
  out.bound = (1.0 - out.factor) * inter;
  out.bound_all_pairs = (1.0 - out.factor) * (inter + internal);
  out.optimal_quality_bound = (1.0 - out.factor) * m - deficit;
  out.applicable = assumptions && uniformly_dense_exact;
  if (!uniformly_dense_exact) {
    out.note = "partition not shown uniformly dense";
  } else if (out.factor >= 1.0 && out.applicable) {
    out.note = "bound is not positive: partition is optimal";
  }
  return out;
}

std::optional<std::vector<std::vector<NodeId>>> FindNondecreasingBuildSequence(
    const Partition& p, const QualityConfig& q) {
  const Graph& g = p.graph();
  const double r = q.resolution();
  std::vector<std::vector<NodeId>> orders;
  for (const NodeSet& c : p.CommunitySets()) {
    const LocalCommunity local = MakeLocal(g, c);
    const int k = local.k();
    std::vector<NodeId> found;
    for (int start = 0; start < k && found.empty(); ++start) {
      std::vector<double> to_set(k, 0.0);
      std::vector<char> in_set(k, 0);
      std::vector<NodeId> order{local.nodes[start]};
      in_set[start] = 1;
      double set_size = local.size[start];
      for (const auto& [j, w] : local.adj[start]) to_set[j] += w;
      bool ok = true;
      for (int step = 1; step < k; ++step) {
        int pick = -1;
        double best = -std::numeric_limits<double>::infinity();
        for (int v = 0; v < k; ++v) {
          if (in_set[v]) continue;
          const double gain = to_set[v] - r * local.size[v] * set_size;
          if (gain > best) {
            best = gain;
            pick = v;
          }
        }
        if (!ApproxGe(to_set[pick], r * local.size[pick] * set_size)) {
          ok = false;
          break;
        }
        in_set[pick] = 1;
        order.push_back(local.nodes[pick]);
        set_size += local.size[pick];
        for (const auto& [j, w] : local.adj[pick]) to_set[j] += w;
      }
      if (ok) found = std::move(order);
    }
    if (found.empty()) return std::nullopt;
    orders.push_back(std::move(found));
  }
  return orders;
}

Partition BruteForceOptimal(const Graph& g, const QualityConfig& q, int n_limit) {
  const NodeId n = g.node_count();
  if (n > n_limit) {
    throw ValidationError("BruteForceOptimal: graph has more than " +
                          std::to_string(n_limit) + " nodes");
  }
  const double r = q.resolution();
  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    for (const Graph::Neighbor& nb : g.neighbors(v)) w[v * n + nb.node] = nb.weight;
  }
  std::vector<CommunityId> label(n, 0);
  std::vector<CommunityId> best_label(n, 0);
  std::vector<double> block_size(n + 1, 0.0);
  double best = -std::numeric_limits<double>::infinity();

  std::function<void(NodeId, CommunityId, double)> rec =
      [&](NodeId v, CommunityId blocks, double h) {
        if (v == n) {
          if (std::isinf(best) || DefinitelyGreater(h, best)) {
            best = h;
            best_label = label;
          }
          return;
        }
        const double sv = g.node_size(v);
        const double loop = g.self_loop(v);
        for (CommunityId b = 0; b <= blocks; ++b) {
          double gain = loop - r * (block_size[b] * sv + Binom2(sv));
          for (NodeId u = 0; u < v; ++u) {
            if (label[u] == b) gain += w[u * n + v];
          }
          label[v] = b;
          block_size[b] += sv;
          rec(v + 1, b == blocks ? blocks + 1 : blocks, h + gain);
          block_size[b] -= sv;
        }
      };
  if (n > 0) {
    rec(0, 0, 0.0);
  }
  std::vector<std::int64_t> labels(best_label.begin(), best_label.end());
  return Partition::FromLabels(g, labels);
}

AuditLevel ParseAuditLevel(const std::string& name) {
  if (name == "none") return AuditLevel::kNone;
  if (name == "fast") return AuditLevel::kFast;
  if (name == "full") return AuditLevel::kFull;
  throw ValidationError("unknown audit level: " + name);
}

Verdict GuaranteeReport::connected() const {
  for (const CommunityReport& c : communities) {
    if (!c.connected) return Verdict::kFail;
  }
  return Verdict::kPass;
}
Verdict GuaranteeReport::gamma_separated() const {
  return Combine(communities, &CommunityReport::gamma_separated);
}
Verdict GuaranteeReport::gamma_connected() const {
  return Combine(communities, &CommunityReport::gamma_connected);
}
Verdict GuaranteeReport::node_optimal() const {
  return Combine(communities, &CommunityReport::node_optimal);
}
Verdict GuaranteeReport::subpartition_dense() const {
  return Combine(communities, &CommunityReport::subpartition_dense);
}
Verdict GuaranteeReport::uniformly_dense() const {
  return Combine(communities, &CommunityReport::uniformly_dense);
}
Verdict GuaranteeReport::subset_optimal() const {
  return Combine(communities, &CommunityReport::subset_optimal);
}

bool GuaranteeReport::ChainConsistent() const {
  auto violates = [](const CheckResult& strong, const CheckResult& weak) {
    return strong.passed() && weak.failed();
  };
  for (const CommunityReport& c : communities) {
    if (violates(c.subset_optimal, c.uniformly_dense) ||
        violates(c.subset_optimal, c.node_optimal) ||
        violates(c.subset_optimal, c.gamma_separated) ||
        violates(c.uniformly_dense, c.subpartition_dense) ||
        violates(c.subpartition_dense, c.gamma_connected)) {
      return false;
    }
  }
  return true;
}

GuaranteeReport AuditPartition(const Partition& p, const QualityConfig& q,
                               AuditLevel level, const VerifyOptions& opts) {
  GuaranteeReport report;
  report.level = level;
  if (level == AuditLevel::kNone) return report;
  const Graph& g = p.graph();
  const double r = q.resolution();
  std::vector<char> separated(p.capacity(), 1);
  for (const SeparationViolation& s : FindSeparationViolations(p, q)) {
    separated[s.c] = 0;
    separated[s.d] = 0;
  }
  std::vector<char> node_ok(p.capacity(), 1);
  for (NodeId v : FindNodeOptimalityViolations(p, q)) node_ok[p.community_of(v)] = 0;

  const std::vector<NodeSet> sets = p.CommunitySets();
  bool all_uniform_exact = true;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const NodeSet& c = sets[i];
    const CommunityId id = p.community_of(c[0]);
    CommunityReport cr;
    cr.members = static_cast<NodeId>(c.size());
    cr.size = p.size_sum(id);
    cr.connected = ConnectedComponents(g, c).size() == 1;
    cr.gamma_separated = separated[id] ? Pass(Method::kExact) : Fail(Method::kExact);
    cr.node_optimal = node_ok[id] ? Pass(Method::kExact) : Fail(Method::kExact);
    cr.gamma_connected = CheckGammaConnectivity(g, c, r, opts, TreeFor(opts, i));
    if (level == AuditLevel::kFull) {
      cr.subpartition_dense =
          CheckSubpartitionDensity(g, c, r, opts, TreeFor(opts, i));
      cr.uniformly_dense = CheckUniformDensity(g, c, r, opts);
      cr.subset_optimal = SubsetOptimalityOf(p, q, c, opts, node_ok[id] != 0);
      const bool exact = cr.uniformly_dense.passed() &&
                         (cr.uniformly_dense.method == Method::kExact ||
                          cr.uniformly_dense.method == Method::kBruteForce);
      all_uniform_exact = all_uniform_exact && exact;
    }
    report.communities.push_back(cr);
  }
  if (level == AuditLevel::kFull) {
    report.gap_bound = OptimalityGapBound(p, q, all_uniform_exact);
  }
  return report;
}

std::string GuaranteeReportJson(const GuaranteeReport& report) {
  using nlohmann::json;
  auto check = [](const CheckResult& c) {
    return json{{"verdict", ToString(c.verdict)}, {"method", ToString(c.method)}};
  };
  json doc;
  doc["level"] = report.level == AuditLevel::kFull ? "full" : "fast";
  json summary;
  summary["connected"] = ToString(report.connected());
  summary["gamma_separated"] = ToString(report.gamma_separated());
  summary["gamma_connected"] = ToString(report.gamma_connected());
  summary["node_optimal"] = ToString(report.node_optimal());
  if (report.level == AuditLevel::kFull) {
    summary["subpartition_dense"] = ToString(report.subpartition_dense());
    summary["uniformly_dense"] = ToString(report.uniformly_dense());
    summary["subset_optimal"] = ToString(report.subset_optimal());
  }
  summary["chain_consistent"] = report.ChainConsistent();
  doc["summary"] = summary;
  json communities = json::array();
  for (std::size_t i = 0; i < report.communities.size(); ++i) {
    const CommunityReport& c = report.communities[i];
    json entry{{"community", i},
               {"members", c.members},
               {"size", c.size},
               {"connected", c.connected},
               {"gamma_separated", check(c.gamma_separated)},
               {"gamma_connected", check(c.gamma_connected)},
               {"node_optimal", check(c.node_optimal)}};
    if (report.level == AuditLevel::kFull) {
      entry["subpartition_dense"] = check(c.subpartition_dense);
      entry["uniformly_dense"] = check(c.uniformly_dense);
      entry["subset_optimal"] = check(c.subset_optimal);
    }
    communities.push_back(std::move(entry));
  }
  doc["communities"] = std::move(communities);
  if (report.level == AuditLevel::kFull) {
    const GapBound& b = report.gap_bound;
    doc["gap_bound"] = {{"applicable", b.applicable},
                        {"bound", b.bound},
                        {"bound_all_pairs", b.bound_all_pairs},
                        {"optimal_quality_bound", b.optimal_quality_bound},
                        {"weight_scale", b.max_weight},
                        {"factor", b.factor},
                        {"note", b.note}};
  }
  return doc.dump();
}

double BadlyConnectedSummary::percent_disconnected() const {
  if (communities.empty()) return 0.0;
  return 100.0 * static_cast<double>(disconnected) /
         static_cast<double>(communities.size());
}

double BadlyConnectedSummary::percent_badly_connected() const {
  if (communities.empty()) return 0.0;
  return 100.0 * static_cast<double>(badly_connected) /
         static_cast<double>(communities.size());
}

BadlyConnectedSummary DetectBadlyConnected(const Partition& p,
                                           const QualityConfig& q,
                                           const LeidenConfig& leiden) {
  constexpr int kMaxIterations = 200;
  constexpr int kPatience = 10;
  const Graph& g = p.graph();
  BadlyConnectedSummary summary;
  LeidenConfig cfg = leiden;
  cfg.quality = q;
  const std::vector<NodeSet> sets = p.CommunitySets();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const NodeSet& c = sets[i];
    BadlyConnectedCommunity entry;
    entry.members = static_cast<NodeId>(c.size());
    if (c.size() > 1) {
      const std::size_t components = ConnectedComponents(g, c).size();
      if (components > 1) {
        entry.connected = false;
        entry.badly_connected = true;
        entry.parts = components;
      } else {
        const Subgraph sub = InducedSubgraph(g, c);
        Rng rng(leiden.seed ^ ((i + 1) * kSeedMix));
        Partition current(sub.graph);
        int streak = 0;
        for (int it = 0; it < kMaxIterations && streak < kPatience; ++it) {
          LeidenResult res = LeidenIteration(sub.graph, current, cfg, rng);
          streak = SamePartition(res.partition, current) ? streak + 1 : 0;
          current = std::move(res.partition);
        }
        entry.parts = current.community_count();
        entry.badly_connected = entry.parts > 1;
      }
    }
    if (!entry.connected) ++summary.disconnected;
    if (entry.badly_connected) ++summary.badly_connected;
    summary.communities.push_back(entry);
  }
  return summary;
}

}  // namespace commdet
