#include <gtest/gtest.h>

#include <map>
#include <random>

#include "decrsp/es_tree.hpp"
#include "decrsp/harness.hpp"

using namespace decrsp;

namespace {

std::vector<Weight> levels(const EsTree& t) {
  std::vector<Weight> out;
  for (NodeId v = 0; v < t.graph().node_count(); ++v) out.push_back(t.level(v));
  return out;
}

std::vector<Weight> bounded_oracle(const DynamicGraph& g, NodeId root, Weight depth) {
  std::vector<Weight> d = bellman_ford(g, root);
  for (Weight& x : d)
    if (x > depth) x = kInf;
  return d;
}

}  // namespace

TEST(EsTree, PathLevels) {
  DynamicGraph g = path_graph(3);
  EXPECT_EQ(levels(EsTree(g, {0}, 2)), (std::vector<Weight>{0, 1, 2}));
  EXPECT_EQ(levels(EsTree(g, {0}, 1)), (std::vector<Weight>{0, 1, kInf}));
}

TEST(EsTree, DeleteTreeEdgeDisconnects) {
  DynamicGraph g = path_graph(3);
  EsTree t(g, {0}, 5);
  std::vector<LevelChange> changed;
  t.update(g.apply_update(UpdateEvent::deletion(0, 1)), changed);
  EXPECT_EQ(changed, (std::vector<LevelChange>{{1, kInf}, {2, kInf}}));
  EXPECT_EQ(t.parent(2), kNoNode);
}

TEST(EsTree, DeleteNonTreeEdgeIsSilent) {
  DynamicGraph g(3, 5);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(0, 2, 5);
  EsTree t(g, {0}, 10);
  std::vector<LevelChange> changed;
  t.update(g.apply_update(UpdateEvent::deletion(0, 2)), changed);
  EXPECT_TRUE(changed.empty());
}

TEST(EsTree, IncreaseOnTriangleTreeEdge) {
  DynamicGraph g(3, 10);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(0, 2, 3);
  EsTree t(g, {0}, 20);
  std::vector<LevelChange> changed;
  t.update(g.apply_update(UpdateEvent::increase(0, 1, 8)), changed);
  EXPECT_EQ(levels(t), bounded_oracle(g, 0, 20));
  EXPECT_EQ(t.parent(1), 2);
}

TEST(EsTree, RootAndIsolatedNode) {
  DynamicGraph g(4, 3);
  g.add_edge(0, 1, 2);
  EsTree t(g, {0}, 100);
  EXPECT_EQ(t.level(0), 0);
  EXPECT_EQ(t.level(3), kInf);
}

TEST(EsTree, MatchesDijkstraUnderRandomUpdates) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Schedule s = generate_instance({.n = 50, .m = 150, .max_weight = 12,
                                    .increase_rate = 0.7, .seed = seed});
    DynamicGraph g = s.initial;
    const Weight depth = seed % 2 ? 40 : 600;
    EsTree t(g, {static_cast<NodeId>(seed % 50)}, depth);
    ASSERT_EQ(levels(t), bounded_oracle(g, static_cast<NodeId>(seed % 50), depth));
    for (const StreamItem& item : s.events) {
      std::vector<Weight> before = levels(t);
      std::vector<LevelChange> changed;
      t.update(g.apply_update(std::get<UpdateEvent>(item)), changed);
      std::vector<Weight> after = levels(t);
      ASSERT_EQ(after, bounded_oracle(g, static_cast<NodeId>(seed % 50), depth));
      std::vector<LevelChange> diff;
      for (NodeId v = 0; v < 50; ++v) {
        ASSERT_GE(after[v], before[v]);
        if (after[v] != before[v]) diff.push_back({v, after[v]});
        NodeId par = t.parent(v);
        if (par != kNoNode) ASSERT_EQ(after[par] + *g.weight(par, v), after[v]);
      }
      ASSERT_EQ(changed, diff);
    }
  }
}

TEST(EsTree, MultipleRootsActAsSuperSource) {
  Schedule s = generate_instance({.n = 30, .m = 70, .max_weight = 5, .seed = 11});
  DynamicGraph g = s.initial;
  std::vector<NodeId> roots{3, 17};
  EsTree t(g, roots, 1000);
  for (const StreamItem& item : s.events) {
    std::vector<LevelChange> changed;
    t.update(g.apply_update(std::get<UpdateEvent>(item)), changed);
    auto want = dijkstra_all(g, roots);
    for (NodeId v = 0; v < 30; ++v) ASSERT_EQ(t.level(v), want[v]);
  }
}

TEST(EsTree, WorkWithinEdgeDepthBudget) {
  Schedule s = generate_instance({.n = 60, .m = 200, .max_weight = 4, .seed = 2});
  DynamicGraph g = s.initial;
  const Weight depth = 30;
  EsTree t(g, {0}, depth);
  for (const StreamItem& item : s.events) {
    std::vector<LevelChange> changed;
    t.update(g.apply_update(std::get<UpdateEvent>(item)), changed);
  }
  EXPECT_LE(t.work(), 2u * 200u * static_cast<std::uint64_t>(depth) + 2u * 200u);
}
