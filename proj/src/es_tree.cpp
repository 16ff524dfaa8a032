#include "decrsp/es_tree.hpp"

#include <algorithm>
#include <queue>

namespace decrsp {

namespace {
using Item = std::pair<Weight, NodeId>;
using MinHeap = std::priority_queue<Item, std::vector<Item>, std::greater<>>;
}  // namespace

EsTree::EsTree(const DynamicGraph& g, std::vector<NodeId> roots, Weight depth)
    : g_(&g), roots_(std::move(roots)), depth_(depth) {
  if (depth < 0) throw ConfigError("ES-tree depth must be non-negative");
  std::sort(roots_.begin(), roots_.end());
  roots_.erase(std::unique(roots_.begin(), roots_.end()), roots_.end());
  const auto n = static_cast<std::size_t>(g.node_count());
  level_.assign(n, kInf);
  parent_.assign(n, kNoNode);
  is_root_.assign(n, 0);
  state_.assign(n, kUnknown);
  tentative_.assign(n, kInf);
  for (NodeId r : roots_) {
    g.check_node(r);
    is_root_[r] = 1;
  }
  build();
}

void EsTree::build() {
  MinHeap pq;
  for (NodeId r : roots_) {
    level_[r] = 0;
    pq.emplace(0, r);
  }
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != level_[u]) continue;
    g_->for_each_neighbor(u, [&](NodeId v, Weight w) {
      ++work_;
      Weight nd = sat_add(d, w);
      if (nd > depth_) return;
      if (nd < level_[v] || (nd == level_[v] && u < parent_[v])) {
        if (nd < level_[v]) pq.emplace(nd, v);
        level_[v] = nd;
        parent_[v] = u;
      }
    });
  }
}

void EsTree::update(const ChangeRecord& c, std::vector<LevelChange>& changed) {
  MinHeap candidates;
  for (auto [x, y] : {std::pair{c.u, c.v}, std::pair{c.v, c.u}}) {
    if (is_root(y) || parent_[y] != x) continue;
    if (level_[x] == kInf || sat_add(level_[x], c.old_weight) != level_[y]) continue;
    candidates.emplace(level_[y], y);
  }
  if (candidates.empty()) return;

  // Phase 1: in increasing level order, a candidate keeps its level iff some
  // tight neighbour is not affected.
  std::vector<NodeId> touched;
  std::vector<NodeId> affected;
  while (!candidates.empty()) {
    NodeId z = candidates.top().second;
    candidates.pop();
    if (state_[z] != kUnknown) continue;
    touched.push_back(z);
    NodeId support = kNoNode;
    g_->for_each_neighbor(z, [&](NodeId y, Weight w) {
      ++work_;
      if (state_[y] == kAffected || level_[y] == kInf) return;
      if (sat_add(level_[y], w) == level_[z] && (support == kNoNode || y < support)) support = y;
    });
    if (support != kNoNode) {
      state_[z] = kKept;
      parent_[z] = support;
      continue;
    }
    state_[z] = kAffected;
    affected.push_back(z);
    g_->for_each_neighbor(z, [&](NodeId ch, Weight) {
      ++work_;
      if (parent_[ch] == z && !is_root(ch)) candidates.emplace(level_[ch], ch);
    });
  }

  // Phase 2: Dijkstra over the affected set, seeded from unaffected neighbours.
  MinHeap pq;
  for (NodeId x : affected) {
    Weight best = kInf;
    NodeId par = kNoNode;
    g_->for_each_neighbor(x, [&](NodeId y, Weight w) {
      ++work_;
      if (state_[y] == kAffected || level_[y] == kInf) return;
      Weight d = sat_add(level_[y], w);
      if (d < best || (d == best && y < par)) {
        best = d;
        par = y;
      }
    });
    tentative_[x] = best;
    parent_[x] = par;
    if (best <= depth_) pq.emplace(best, x);
  }
  std::vector<std::pair<NodeId, Weight>> old_levels;
  old_levels.reserve(affected.size());
  for (NodeId x : affected) {
    old_levels.emplace_back(x, level_[x]);
    level_[x] = kInf;
  }
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (d != tentative_[x] || level_[x] != kInf) continue;
    level_[x] = d;
    g_->for_each_neighbor(x, [&](NodeId y, Weight w) {
      ++work_;
      if (state_[y] != kAffected || level_[y] != kInf) return;
      Weight nd = sat_add(d, w);
      if (nd > depth_) return;
      if (nd < tentative_[y] || (nd == tentative_[y] && x < parent_[y])) {
        if (nd < tentative_[y]) pq.emplace(nd, y);
        tentative_[y] = nd;
        parent_[y] = x;
      }
    });
  }
  std::sort(old_levels.begin(), old_levels.end());
  for (auto [x, old] : old_levels) {
    if (level_[x] == kInf) parent_[x] = kNoNode;
    if (level_[x] != old) changed.push_back({x, level_[x]});
    tentative_[x] = kInf;
  }
  for (NodeId z : touched) state_[z] = kUnknown;
}

}  // namespace decrsp
