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
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include <gtest/gtest.h>

#include "actmax/graph.hpp"
#include "test_util.hpp"

namespace actmax {
namespace {

using testing::make_graph;

Graph parse(const std::string& text, Orientation o, IngestionReport* rep = nullptr) {
  std::istringstream in(text);
  return read_edge_list(in, o, rep);
}

std::set<std::pair<std::uint64_t, std::uint64_t>> labeled_arcs(const Graph& g) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const Arc& e : g.arcs()) out.emplace(g.label(e.src), g.label(e.dst));
  return out;
}

TEST(EdgeList, UndirectedEdgesBecomeTwoArcs) {
  const Graph g = parse("# c\n1 2\n2 3", Orientation::undirected);
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.arc_count(), 4u);
}

TEST(EdgeList, DropsDuplicatesAndSelfLoops) {
  IngestionReport rep;
  const Graph g = parse("0 1\n0 1\n1 1", Orientation::directed, &rep);
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_EQ(g.arc_count(), 1u);
  EXPECT_EQ(rep.dropped_duplicates, 1u);
  EXPECT_EQ(rep.dropped_self_loops, 1u);
  EXPECT_EQ(rep.nodes, 2u);
  EXPECT_EQ(rep.arcs, 1u);
}

TEST(EdgeList, UndirectedReverseDuplicateIsDropped) {
  IngestionReport rep;
  const Graph g = parse("1 2\n2 1\n", Orientation::undirected, &rep);
  EXPECT_EQ(g.arc_count(), 2u);
  EXPECT_EQ(rep.dropped_duplicates, 1u);
}

TEST(EdgeList, RemapsToDenseIdsInLabelOrder) {
  const Graph g = parse("100 7\n7 42\n", Orientation::directed);
  ASSERT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.label(0), 7u);
  EXPECT_EQ(g.label(1), 42u);
  EXPECT_EQ(g.label(2), 100u);
  EXPECT_EQ(g.find_label(42), NodeId{1});
  EXPECT_FALSE(g.find_label(5).has_value());
  EXPECT_EQ(labeled_arcs(g), (std::set<std::pair<std::uint64_t, std::uint64_t>>{{100, 7}, {7, 42}}));
}

TEST(EdgeList, AcceptsTabsAndTrailingWhitespace) {
  const Graph g = parse("  1\t2  \r\n\n# x\n2 3\t\n", Orientation::directed);
  EXPECT_EQ(g.arc_count(), 2u);
}

TEST(EdgeList, MalformedLineReportsLineNumber) {
  try {
    parse("# header\n1 2\n3 x\n", Orientation::directed);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse("1 2 3\n", Orientation::directed), ParseError);
  EXPECT_THROW(parse("1\n", Orientation::directed), ParseError);
  EXPECT_THROW(parse("-1 2\n", Orientation::directed), ParseError);
}

TEST(EdgeList, EmptyGraphIsAnError) {
  EXPECT_THROW(parse("# only comments\n\n", Orientation::directed), Error);
}

TEST(EdgeList, FixtureWithIsolatedSelfLoopNode) {
  IngestionReport rep;
  const Graph g = load_edge_list(testing::data_path("triangle_isolate.txt"),
                                 Orientation::undirected, &rep);
  EXPECT_EQ(g.node_count(), 4u);
  EXPECT_EQ(g.arc_count(), 6u);
  EXPECT_EQ(rep.dropped_self_loops, 1u);
  const NodeId iso = *g.find_label(4);
  EXPECT_EQ(g.in_degree(iso) + g.out_degree(iso), 0u);
}

TEST(EdgeList, MissingFileIsAnError) {
  EXPECT_THROW(load_edge_list("/nonexistent/graph.txt", Orientation::directed), Error);
}

TEST(EdgeList, RoundTripPreservesArcSet) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::ostringstream text;
    std::uniform_int_distribution<int> id(0, 30);
    for (int i = 0; i < 60; ++i) text << id(rng) * 3 << ' ' << id(rng) * 3 << '\n';
    for (Orientation o : {Orientation::directed, Orientation::undirected}) {
      const Graph g = parse(text.str(), o);
      std::ostringstream out;
      write_edge_list(g, out);
      const Graph back = parse(out.str(), Orientation::directed);
      EXPECT_EQ(labeled_arcs(back), labeled_arcs(g));
    }
  }
}

TEST(GraphInvariants, RejectsSelfLoopsDuplicatesAndBadValues) {
  EXPECT_THROW(make_graph(2, {{0, 0, 0.5, 1}}), std::invalid_argument);
  EXPECT_THROW(make_graph(2, {{0, 1, 0.5, 1}, {0, 1, 0.5, 1}}), std::invalid_argument);
  EXPECT_THROW(make_graph(2, {{0, 2, 0.5, 1}}), std::invalid_argument);
  EXPECT_THROW(make_graph(2, {{0, 1, 1.5, 1}}), std::invalid_argument);
  EXPECT_THROW(make_graph(2, {{0, 1, 0.5, -1}}), std::invalid_argument);
  EXPECT_NO_THROW(make_graph(2, {{0, 1, 0.5, 1}, {1, 0, 0.5, 1}}));
}

TEST(DiffusionParams, OneOverInDegree) {
  const Graph raw = parse("1 3\n2 3\n3 4\n", Orientation::directed);
  const Graph g = assign_diffusion_params(raw);
  const NodeId v3 = *g.find_label(3), v4 = *g.find_label(4);
  for (ArcId e : g.in_arcs(v3)) EXPECT_DOUBLE_EQ(g.arc(e).b, 0.5);
  for (ArcId e : g.in_arcs(v4)) EXPECT_DOUBLE_EQ(g.arc(e).b, 1.0);
}

TEST(DiffusionParams, InArcSumsAreOne) {
  std::mt19937_64 rng(11);
  std::ostringstream text;
  std::uniform_int_distribution<int> id(0, 50);
  for (int i = 0; i < 400; ++i) text << id(rng) << ' ' << id(rng) << '\n';
  const Graph g = assign_diffusion_params(parse(text.str(), Orientation::undirected));
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.in_degree(v) == 0) continue;
    double sum = 0.0;
    for (ArcId e : g.in_arcs(v)) sum += g.arc(e).b;
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(DiffusionParams, IsolatedNodeHasNoArcs) {
  const Graph g = assign_diffusion_params(
      load_edge_list(testing::data_path("triangle_isolate.txt"), Orientation::undirected));
  const NodeId iso = *g.find_label(4);
  EXPECT_TRUE(g.in_arcs(iso).empty());
  EXPECT_TRUE(g.out_arcs(iso).empty());
}

TEST(Activity, UniformAndDiffusionSettings) {
  const Graph raw = parse("1 2\n3 2\n2 4\n4 1\n", Orientation::directed);
  const Graph uniform = assign_activity(assign_diffusion_params(raw), ActivitySetting::uniform);
  EXPECT_DOUBLE_EQ(uniform.total_activity(), 4.0);
  const Graph diffusion =
      assign_activity(assign_diffusion_params(raw), ActivitySetting::diffusion);
  for (const Arc& e : diffusion.arcs()) EXPECT_DOUBLE_EQ(e.a, e.b);
  const NodeId v2 = *diffusion.find_label(2);
  for (ArcId e : diffusion.in_arcs(v2)) EXPECT_DOUBLE_EQ(diffusion.arc(e).a, 0.5);
}

TEST(Activity, PathNodeWeights) {
  const Graph g = assign_activity(make_graph(3, {{0, 1, 0, 0}, {1, 2, 0, 0}}),
                                  ActivitySetting::uniform);
  EXPECT_DOUBLE_EQ(g.node_weight(0), 0.5);
  EXPECT_DOUBLE_EQ(g.node_weight(1), 1.0);
  EXPECT_DOUBLE_EQ(g.node_weight(2), 0.5);
}

TEST(Activity, TotalWeightEqualsTotalActivity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph base = testing::random_instance(rng, 9, 30, Model::ic, {0.1, 0.4, 0.9});
    for (ActivitySetting s : {ActivitySetting::uniform, ActivitySetting::diffusion}) {
      const Graph g = assign_activity(base, s);
      EXPECT_NEAR(g.total_weight(), g.total_activity(), 1e-9);
    }
  }
}

TEST(Transpose, InArcs) {
  const Graph chain = make_graph(2, {{0, 1, 1, 1}});
  const TransposeView t = transpose_view(chain);
  ASSERT_EQ(t.in_arcs(1).size(), 1u);
  EXPECT_EQ(t.source(t.in_arcs(1)[0]), 0u);

  const Graph star = make_graph(4, {{0, 1, 1, 1}, {0, 2, 1, 1}, {0, 3, 1, 1}});
  EXPECT_TRUE(transpose_view(star).in_arcs(0).empty());

  const Graph cycle = make_graph(2, {{0, 1, 1, 1}, {1, 0, 1, 1}});
  const TransposeView c = transpose_view(cycle);
  EXPECT_EQ(c.source(c.in_arcs(0)[0]), 1u);
  EXPECT_EQ(c.source(c.in_arcs(1)[0]), 0u);
}

TEST(SeedSetTest, ValidatesAndComparesAsSet) {
  EXPECT_THROW(SeedSet({1, 1}, 3), std::invalid_argument);
  EXPECT_THROW(SeedSet({3}, 3), std::invalid_argument);
  const SeedSet a({2, 0}, 3), b({0, 2}, 3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 2u);
  EXPECT_TRUE(a.contains(2));
  EXPECT_FALSE(a.contains(1));
  EXPECT_EQ(a.nodes()[0], 2u);
}

}  // namespace
}  // namespace actmax
