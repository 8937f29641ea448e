// Copyright 2026 The Authors.
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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "actmax/alias_table.hpp"
#include "actmax/polling.hpp"
#include "test_util.hpp"

namespace actmax {
namespace {

using testing::make_graph;
using Nodes = std::vector<NodeId>;

Nodes sorted(Nodes v) {
  std::sort(v.begin(), v.end());
  return v;
}

TEST(Alias, FrequenciesMatchWeights) {
  const std::vector<double> w{0.5, 2.0, 0.0, 1.5};
  const AliasTable t(w);
  Rng rng(1);
  std::vector<int> count(w.size(), 0);
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) ++count[t.sample(rng)];
  EXPECT_EQ(count[2], 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_DOUBLE_EQ(t.probability(i), w[i] / 4.0);
    EXPECT_NEAR(static_cast<double>(count[i]) / draws, w[i] / 4.0, 0.005);
  }
  EXPECT_THROW(AliasTable(std::vector<double>{0.0, 0.0}), DegenerateWeightsError);
}

TEST(ActivityArc, UniformPassesChiSquare) {
  const Graph g = make_graph(4, {{0, 1, 0, 1}, {1, 2, 0, 1}, {2, 3, 0, 1}, {3, 0, 0, 1}});
  Rng rng(2);
  std::vector<int> count(4, 0);
  const int draws = 100000;
  PollingContext ctx(g, Model::ic, Objective::activity);
  for (int i = 0; i < draws; ++i) ++count[ctx.sample_arc(rng)];
  double chi2 = 0.0;
  for (int c : count) chi2 += std::pow(c - draws / 4.0, 2) / (draws / 4.0);
  EXPECT_LT(chi2, 11.345);  // χ²(3) upper 1% quantile
}

TEST(ActivityArc, SingleArcAndWeightedPair) {
  Rng rng(3);
  const Graph one = make_graph(2, {{0, 1, 0.5, 1}});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_activity_arc(one, rng), 0u);

  const Graph two = make_graph(3, {{0, 1, 0, 3}, {1, 2, 0, 1}});
  PollingContext ctx(two, Model::ic, Objective::activity);
  int first = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) first += ctx.sample_arc(rng) == 0;
  EXPECT_NEAR(static_cast<double>(first) / draws, 0.75, 0.01);
}

TEST(ActivityArc, ZeroTotalActivityIsAnError) {
  Rng rng(4);
  const Graph g = make_graph(2, {{0, 1, 0.5, 0}});
  EXPECT_THROW(sample_activity_arc(g, rng), DegenerateWeightsError);
  EXPECT_THROW(PollingContext(g, Model::ic, Objective::activity), DegenerateWeightsError);
}

TEST(ReverseReachable, ChainExamples) {
  Rng rng(5);
  const Graph live = make_graph(3, {{0, 1, 1, 1}, {1, 2, 1, 1}});
  EdgeStateCache cache(live, Model::ic);
  EXPECT_EQ(reverse_reachable(live, 2, cache, rng), (Nodes{0, 1, 2}));

  const Graph dead = make_graph(3, {{0, 1, 0, 1}, {1, 2, 0, 1}});
  EdgeStateCache dead_cache(dead, Model::lt);
  EXPECT_EQ(reverse_reachable(dead, 2, dead_cache, rng), (Nodes{2}));
}

TEST(ReverseReachable, LtChoiceFrequencies) {
  const Graph g = make_graph(3, {{0, 2, 0.3, 1}, {1, 2, 0.7, 1}});
  EdgeStateCache cache(g, Model::lt);
  Rng rng(6);
  const int draws = 100000;
  int via_first = 0;
  for (int i = 0; i < draws; ++i) {
    cache.reset();
    const Nodes rr = reverse_reachable(g, 2, cache, rng);
    ASSERT_EQ(rr.size(), 2u);
    via_first += rr == Nodes{0, 2};
  }
  EXPECT_NEAR(static_cast<double>(via_first) / draws, 0.3, 0.01);
}

TEST(PairHyperedgeTest, SingleArcExamples) {
  Rng rng(7);
  const PairHyperedge live = generate_pair_hyperedge(make_graph(2, {{0, 1, 1, 1}}), Model::ic, rng);
  EXPECT_EQ(live.n3, (Nodes{0}));
  EXPECT_TRUE(live.n1.empty());
  EXPECT_EQ(live.n2, (Nodes{1}));

  const PairHyperedge dead = generate_pair_hyperedge(make_graph(2, {{0, 1, 0, 1}}), Model::ic, rng);
  EXPECT_TRUE(dead.n3.empty());
  EXPECT_EQ(dead.n1, (Nodes{0}));
  EXPECT_EQ(dead.n2, (Nodes{1}));
}

TEST(PairHyperedgeTest, StronglyConnectedTriangle) {
  Rng rng(8);
  const Graph g = testing::make_bidirected(3, {{0, 1}, {1, 2}, {2, 0}}, 1.0, 1.0);
  for (Model m : {Model::ic}) {
    const PairHyperedge h = generate_pair_hyperedge(g, m, rng);
    EXPECT_EQ(sorted(h.n3), (Nodes{0, 1, 2}));
    EXPECT_TRUE(h.n1.empty());
    EXPECT_TRUE(h.n2.empty());
  }
}

TEST(SingleHyperedgeTest, LowerExamples) {
  Rng rng(9);
  EXPECT_EQ(generate_lower_hyperedge(make_graph(2, {{0, 1, 1, 1}}), Model::ic, rng).cover,
            (Nodes{0}));
  EXPECT_TRUE(
      generate_lower_hyperedge(make_graph(2, {{0, 1, 0, 1}}), Model::ic, rng).cover.empty());
  EXPECT_EQ(generate_lower_hyperedge(make_graph(2, {{0, 1, 1, 1}}), Model::lt, rng).cover,
            (Nodes{0}));
}

TEST(SingleHyperedgeTest, UpperNodeFrequencies) {
  const Graph g = make_graph(3, {{0, 1, 0, 1}, {1, 2, 0, 1}});
  PollingContext ctx(g, Model::ic, Objective::upper);
  HyperedgeSampler sampler(ctx);
  Rng rng(10);
  Hypergraph h(3);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) sampler.sample_into(rng, h);
  std::vector<int> count(3, 0);
  for (HyperedgeId i = 0; i < h.size(); ++i) {
    ASSERT_EQ(h.n3(i).size(), 1u);  // B = 0: singletons
    ++count[h.n3(i)[0]];
  }
  EXPECT_NEAR(count[0] / double(draws), 0.25, 0.01);
  EXPECT_NEAR(count[1] / double(draws), 0.50, 0.01);
  EXPECT_NEAR(count[2] / double(draws), 0.25, 0.01);
}

TEST(SingleHyperedgeTest, UpperNeedsPositiveWeight) {
  Rng rng(11);
  const Graph lonely(1, {});
  EXPECT_THROW(generate_upper_hyperedge(lonely, Model::ic, rng), DegenerateWeightsError);
}

// Nodes reaching `target` through arcs whose cached state is live. An arc
// may stay undecided only if its tail was reached some other way.
Nodes replay_reverse(const Graph& g, const EdgeStateCache& cache, NodeId target) {
  std::vector<char> seen(g.node_count(), 0);
  Nodes stack{target}, out, undecided_tails;
  seen[target] = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (ArcId e : g.in_arcs(v)) {
      const auto state = cache.arc_state(e);
      if (!state) undecided_tails.push_back(g.arc(e).src);
      if (state.value_or(false) && !seen[g.arc(e).src]) {
        seen[g.arc(e).src] = 1;
        stack.push_back(g.arc(e).src);
      }
    }
  }
  for (NodeId u : undecided_tails) EXPECT_TRUE(seen[u]) << "undecided arc from " << u;
  return sorted(out);
}

TEST(PairHyperedgeTest, PartitionAndCacheConsistency) {
  std::mt19937_64 gen(12);
  Rng rng(13);
  for (Model model : {Model::ic, Model::lt}) {
    for (int trial = 0; trial < 40; ++trial) {
      const Graph g = testing::random_instance(gen, 9, 25, model, {0.2, 0.5, 0.9});
      PollingContext ctx(g, model, Objective::activity);
      HyperedgeSampler sampler(ctx);
      for (int i = 0; i < 50; ++i) {
        const PairPoll p = sampler.poll_pair(rng);
        const PairHyperedge& h = p.hyperedge;
        std::set<NodeId> n1(h.n1.begin(), h.n1.end()), n2(h.n2.begin(), h.n2.end()),
            n3(h.n3.begin(), h.n3.end());
        EXPECT_EQ(n1.size() + n2.size() + n3.size(), h.n1.size() + h.n2.size() + h.n3.size());
        for (NodeId v : n3) {
          EXPECT_FALSE(n1.count(v));
          EXPECT_FALSE(n2.count(v));
        }
        for (NodeId v : n1) EXPECT_FALSE(n2.count(v));
        Nodes first = h.n1, second = h.n2;
        first.insert(first.end(), h.n3.begin(), h.n3.end());
        second.insert(second.end(), h.n3.begin(), h.n3.end());
        EXPECT_EQ(sorted(first), sorted(p.first));
        EXPECT_EQ(sorted(second), sorted(p.second));

        // Replaying the cached arc states reproduces both traversals.
        EXPECT_EQ(replay_reverse(g, sampler.cache(), g.arc(p.arc).src), sorted(p.first));
        EXPECT_EQ(replay_reverse(g, sampler.cache(), g.arc(p.arc).dst), sorted(p.second));
        if (model == Model::lt) {
          std::vector<int> live_in(g.node_count(), 0);
          for (ArcId e = 0; e < g.arc_count(); ++e)
            live_in[g.arc(e).dst] += sampler.cache().arc_state(e).value_or(false);
          for (int c : live_in) EXPECT_LE(c, 1);
        }
      }
    }
  }
}

TEST(EdgeStateCacheTest, StatesAreStableWithinOneGeneration) {
  const Graph g = make_graph(3, {{0, 2, 0.5, 1}, {1, 2, 0.5, 1}});
  Rng rng(14);
  for (Model model : {Model::ic, Model::lt}) {
    EdgeStateCache cache(g, model);
    for (int i = 0; i < 200; ++i) {
      cache.reset();
      EXPECT_FALSE(cache.arc_state(0).has_value());
      const bool first = cache.arc_live(0, rng);
      for (int again = 0; again < 5; ++again) EXPECT_EQ(cache.arc_live(0, rng), first);
      EXPECT_EQ(cache.arc_state(0), first);
      if (model == Model::lt && first) {
        EXPECT_FALSE(cache.arc_live(1, rng));
      }
    }
  }
}

// T·1[S covers h] is unbiased for each objective; compare against the exact
// oracle within 3 standard errors.
TEST(Unbiasedness, MatchesExactOracle) {
  std::mt19937_64 gen(15);
  int misses = 0, runs = 0;
  for (Model model : {Model::ic, Model::lt}) {
    for (int trial = 0; trial < 12; ++trial) {
      const Graph g = testing::random_instance(gen, 7, 12, model, {0, 0.3, 0.5, 1});
      const ExactOracle oracle(g, model);
      const SeedSet s({static_cast<NodeId>(trial % 7), static_cast<NodeId>((trial + 3) % 7)}, 7);
      const auto mask = s.mask(7);
      for (Objective o :
           {Objective::activity, Objective::lower, Objective::upper, Objective::influence}) {
        PollingContext ctx(g, model, o);
        HyperedgeSampler sampler(ctx);
        Rng rng(100 + trial);
        const std::size_t m = 40000;
        std::size_t covered = 0;
        for (std::size_t i = 0; i < m; ++i) covered += sampler.sample_covered(rng, mask);
        const double p = static_cast<double>(covered) / m;
        const double exact = oracle.value(s, o);
        const double q = exact / ctx.scale();
        const double tol = 3.0 * ctx.scale() * std::sqrt(q * (1.0 - q) / m) + 1e-9;
        ++runs;
        misses += std::abs(ctx.scale() * p - exact) > tol;
      }
    }
  }
  EXPECT_LE(misses, 2) << "of " << runs;
}

TEST(SamplerPoolTest, ReproducibleForSeedAndWorkers) {
  std::mt19937_64 gen(16);
  const Graph g = testing::random_instance(gen, 10, 30, Model::ic, {0.3, 0.6});
  const PollingContext ctx(g, Model::ic, Objective::activity);
  for (std::size_t workers : {1u, 4u}) {
    StreamSet a(77, workers), b(77, workers);
    SamplerPool pa(ctx, a), pb(ctx, b);
    Hypergraph ha(g.node_count()), hb(g.node_count());
    pa.generate(1000, ha);
    pb.generate(1000, hb);
    ASSERT_EQ(ha.size(), 1000u);
    ASSERT_EQ(hb.size(), 1000u);
    for (HyperedgeId i = 0; i < ha.size(); ++i) {
      EXPECT_TRUE(std::ranges::equal(ha.n1(i), hb.n1(i)));
      EXPECT_TRUE(std::ranges::equal(ha.n2(i), hb.n2(i)));
      EXPECT_TRUE(std::ranges::equal(ha.n3(i), hb.n3(i)));
    }
  }
}

TEST(SamplerPoolTest, CoverageFlagsAgreeWithStoredHyperedges) {
  std::mt19937_64 gen(17);
  const Graph g = testing::random_instance(gen, 10, 30, Model::lt, {0.3, 0.6});
  const PollingContext ctx(g, Model::lt, Objective::activity);
  const SeedSet s({1, 4, 6}, 10);
  StreamSet a(5, 3), b(5, 3);
  Hypergraph h(10);
  SamplerPool(ctx, a).generate(3000, h);
  const auto flags = SamplerPool(ctx, b).coverage_flags(3000, s.mask(10));
  for (HyperedgeId i = 0; i < h.size(); ++i)
    EXPECT_EQ(flags[i] != 0, h.fully_covered(i, s.mask(10)));
}

TEST(Dump, UsesOriginalLabels) {
  const Graph g(2, {Arc{0, 1, 1.0, 1.0}}, {10, 20});
  Hypergraph h(2);
  h.add(Nodes{}, Nodes{1}, Nodes{0});
  const auto j = hyperedges_to_json(h, g);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["n3"][0], 10);
  EXPECT_EQ(j[0]["n2"][0], 20);
}

}  // namespace
}  // namespace actmax
