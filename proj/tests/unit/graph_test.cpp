#include <gtest/gtest.h>

#include <sstream>

#include "decrsp/graph.hpp"
#include "decrsp/harness.hpp"

using namespace decrsp;

namespace {

DynamicGraph from_text(const std::string& text) {
  std::istringstream in(text);
  return load_graph(in);
}

Weight dist(const DynamicGraph& g, NodeId s, NodeId t) {
  return dijkstra_all(g, std::span<const NodeId>(&s, 1))[static_cast<std::size_t>(t)];
}

}  // namespace

TEST(LoadGraph, HeaderAndEdges) {
  DynamicGraph g = from_text("3 2 10\n0 1 4\n1 2 7\n");
  EXPECT_EQ(g.node_count(), 3);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.weight(1, 0), 4);
  EXPECT_EQ(g.weight(2, 1), 7);
}

TEST(LoadGraph, RejectsWeightAboveW) {
  try {
    from_text("2 1 5\n0 1 6\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 2u);
  }
}

TEST(LoadGraph, RejectsSelfLoopsDuplicatesAndCountMismatch) {
  EXPECT_THROW(from_text("2 1 5\n1 1 2\n"), ParseError);
  EXPECT_THROW(from_text("3 2 5\n0 1 2\n1 0 3\n"), ParseError);
  EXPECT_THROW(from_text("3 2 5\n0 1 2\n"), ParseError);
  EXPECT_THROW(from_text("3 1 5\n0 7 2\n"), ParseError);
}

TEST(LoadGraph, IsolatedNodes) {
  DynamicGraph g = from_text("4 0 1\n");
  for (NodeId s = 0; s < 4; ++s)
    for (NodeId t = 0; t < 4; ++t) EXPECT_EQ(dist(g, s, t), s == t ? 0 : kInf);
}

TEST(ApplyUpdate, DeleteDisconnectsPath) {
  DynamicGraph g = path_graph(3);
  ChangeRecord c = g.apply_update(UpdateEvent::deletion(0, 1));
  EXPECT_TRUE(c.deleted());
  EXPECT_EQ(c.old_weight, 1);
  EXPECT_EQ(dist(g, 0, 2), kInf);
  EXPECT_FALSE(g.has_edge(1, 0));
}

TEST(ApplyUpdate, IncreaseSingleEdge) {
  DynamicGraph g(2, 10);
  g.add_edge(0, 1, 4);
  g.apply_update(UpdateEvent::increase(0, 1, 9));
  EXPECT_EQ(dist(g, 0, 1), 9);
}

TEST(ApplyUpdate, DeleteTriangleEdge) {
  DynamicGraph g(3, 1);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(0, 2, 1);
  g.apply_update(UpdateEvent::deletion(0, 1));
  EXPECT_EQ(dist(g, 0, 1), 2);
}

TEST(ApplyUpdate, RejectsInvalidEvents) {
  DynamicGraph g = path_graph(3, 2);
  EXPECT_THROW(g.apply_update(UpdateEvent::increase(0, 1, 2)), GraphError);
  EXPECT_THROW(g.apply_update(UpdateEvent::increase(0, 1, 1)), GraphError);
  EXPECT_THROW(g.apply_update(UpdateEvent::deletion(0, 2)), GraphError);
  EXPECT_THROW(g.apply_update(UpdateEvent::increase(0, 1, 3)), GraphError);  // above W
}

TEST(ApplyUpdate, VersionIncreasesAndCompactionKeepsIndex) {
  DynamicGraph g(30, 5);
  for (NodeId v = 1; v < 30; ++v) g.add_edge(0, v, 1 + v % 5);
  std::uint64_t version = g.version();
  for (NodeId v = 1; v < 25; ++v) {
    g.apply_update(UpdateEvent::deletion(0, v));
    EXPECT_GT(g.version(), version);
    version = g.version();
  }
  EXPECT_EQ(g.degree(0), 5u);
  for (NodeId v = 25; v < 30; ++v) EXPECT_EQ(g.weight(v, 0), 1 + v % 5);
  g.apply_update(UpdateEvent::deletion(0, 27));
  EXPECT_FALSE(g.has_edge(0, 27));
  EXPECT_TRUE(g.has_edge(0, 28));
}

TEST(DijkstraBounded, BoundCutsTail) {
  DynamicGraph g = path_graph(3);
  DistanceList d = dijkstra_bounded(g, 0, 1);
  EXPECT_EQ(d, (DistanceList{{0, 0}, {1, 1}}));
}

TEST(DijkstraBounded, WeightedTriangle) {
  DynamicGraph g(3, 3);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(0, 2, 3);
  EXPECT_EQ(dijkstra_bounded(g, 0, kInf), (DistanceList{{0, 0}, {1, 1}, {2, 2}}));
}

TEST(DijkstraBounded, MultiSourceActsAsZeroWeightRoot) {
  Schedule s = generate_instance({.n = 25, .m = 60, .max_weight = 9, .seed = 4});
  const DynamicGraph& g = s.initial;
  std::vector<NodeId> src{1, 2};
  DistanceList d = dijkstra_bounded(g, src, 5);
  auto d1 = bellman_ford(g, 1), d2 = bellman_ford(g, 2);
  DistanceList want;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    Weight best = std::min(d1[static_cast<std::size_t>(v)], d2[static_cast<std::size_t>(v)]);
    if (best <= 5) want.emplace_back(v, best);
  }
  EXPECT_EQ(d, want);
}

TEST(DijkstraAll, AgreesWithBellmanFord) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Schedule s = generate_instance({.n = 40, .m = 90, .max_weight = 20, .seed = seed});
    for (NodeId src = 0; src < 40; src += 7)
      EXPECT_EQ(dijkstra_all(s.initial, std::span<const NodeId>(&src, 1)), bellman_ford(s.initial, src));
  }
}

TEST(InducedSubgraph, TriangleSubset) {
  DynamicGraph g(3, 5);
  g.add_edge(0, 1, 2);
  g.add_edge(1, 2, 3);
  g.add_edge(0, 2, 4);
  InducedSubgraph sub(g, {0, 1});
  EXPECT_EQ(sub.graph().edges(), (std::vector<Edge>{{0, 1, 2}}));
}

TEST(InducedSubgraph, AllNodesKeepsAllEdges) {
  DynamicGraph g = grid_graph(3, 3);
  InducedSubgraph sub(g, {0, 1, 2, 3, 4, 5, 6, 7, 8});
  EXPECT_EQ(sub.graph().edges(), g.edges());
}

TEST(InducedSubgraph, StarLeavesHaveNoEdges) {
  DynamicGraph g(5, 1);
  for (NodeId v = 1; v < 5; ++v) g.add_edge(0, v, 1);
  InducedSubgraph sub(g, {1, 2});
  EXPECT_EQ(sub.graph().edge_count(), 0u);
}

TEST(InducedSubgraph, ForwardsOnlyInternalChanges) {
  DynamicGraph g = path_graph(4, 3);
  InducedSubgraph sub(g, {1, 2, 3});
  EXPECT_EQ(sub.to_local(2), 1);
  EXPECT_EQ(sub.to_parent(0), 1);
  EXPECT_FALSE(sub.forward(g.apply_update(UpdateEvent::deletion(0, 1))));
  auto local = sub.forward(g.apply_update(UpdateEvent::deletion(2, 3)));
  ASSERT_TRUE(local);
  EXPECT_TRUE(local->deleted());
  EXPECT_FALSE(sub.graph().has_edge(1, 2));
}

TEST(ParseUpdates, ReplaysWeightsAndQueries) {
  DynamicGraph g = from_text("3 2 10\n0 1 4\n1 2 7\n");
  std::istringstream in("# stream\nI 0 1 6\nI 0 1 +2\nQ 0 2\nD 1 2\n");
  auto items = parse_updates(in, g, true);
  ASSERT_EQ(items.size(), 4u);
  EXPECT_EQ(std::get<UpdateEvent>(items[1]), UpdateEvent::increase(0, 1, 8));
  EXPECT_EQ(std::get<QueryEvent>(items[2]), (QueryEvent{0, 2}));
  std::istringstream bad("D 1 2\nD 1 2\n");
  EXPECT_THROW(parse_updates(bad, g, false), ParseError);
  std::istringstream query("Q 0 1\n");
  EXPECT_THROW(parse_updates(query, g, false), ParseError);
}

TEST(WriteGraph, RoundTrips) {
  Schedule s = generate_instance({.n = 12, .m = 20, .max_weight = 7, .increase_rate = 0.5, .seed = 9});
  std::ostringstream gout, uout;
  write_graph(gout, s.initial);
  write_updates(uout, s.events);
  std::istringstream gin(gout.str()), uin(uout.str());
  DynamicGraph g = load_graph(gin);
  EXPECT_EQ(g.edges(), s.initial.edges());
  auto items = parse_updates(uin, g, true);
  EXPECT_EQ(items, s.events);
}
