#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "decrsp/es_tree.hpp"
#include "decrsp/graph.hpp"

namespace decrsp {

class MonotoneInvariantMonitor;

// ES-tree over a graph that also receives insertions. Levels never decrease:
// an insertion only records the edge. Owns its edge set (the scaled shortcut
// graph); levels above max_level become infinite.
class MonotoneEsTree {
 public:
  enum class Op { Insert, Lower, Increase, Delete };

  MonotoneEsTree(NodeId n, std::vector<NodeId> roots, Weight max_level,
                 std::span<const Edge> edges);
  MonotoneEsTree(const DynamicGraph& h, std::vector<NodeId> roots, Weight max_level);

  void insert(NodeId u, NodeId v, Weight w);
  // Weight decrease, handled like an insertion: keys change, levels do not.
  void lower(NodeId u, NodeId v, Weight w);
  void increase(NodeId u, NodeId v, Weight w, std::vector<LevelChange>& changed);
  void remove(NodeId u, NodeId v, std::vector<LevelChange>& changed);
  // Marks the end of the updates induced by one update of the base graph.
  void end_batch();

  Weight level(NodeId v) const { return level_[static_cast<std::size_t>(v)]; }
  NodeId parent(NodeId v) const { return parent_[static_cast<std::size_t>(v)]; }
  Weight max_level() const { return max_level_; }
  NodeId node_count() const { return static_cast<NodeId>(level_.size()); }
  std::span<const NodeId> roots() const { return roots_; }
  bool is_root(NodeId v) const { return is_root_[static_cast<std::size_t>(v)] != 0; }
  std::optional<Weight> weight(NodeId u, NodeId v) const;

  template <class F>
  void for_each_neighbor(NodeId u, F&& f) const {
    for (const auto& [v, w] : adj_[static_cast<std::size_t>(u)]) f(v, w);
  }
  template <class F>
  void for_each_edge(F&& f) const {
    for (NodeId u = 0; u < node_count(); ++u)
      for (const auto& [v, w] : adj_[static_cast<std::size_t>(u)])
        if (u < v) f(u, v, w);
  }

  std::uint64_t work() const { return work_; }
  std::uint64_t edges_ever() const { return edges_ever_; }
  std::uint64_t weight_updates() const { return weight_updates_; }
  std::size_t edge_count() const { return edge_count_; }

  void set_monitor(MonotoneInvariantMonitor* m);

 private:
  using Key = std::pair<Weight, NodeId>;

  void check_pair(NodeId u, NodeId v) const;
  void set_weight(NodeId u, NodeId v, Weight w_old, Weight w_new);
  void push(NodeId v);
  void update_levels(std::vector<LevelChange>& changed);

  std::vector<NodeId> roots_;
  std::vector<std::uint8_t> is_root_;
  Weight max_level_;
  std::vector<Weight> level_;
  std::vector<NodeId> parent_;
  std::vector<std::unordered_map<NodeId, Weight>> adj_;
  std::vector<std::set<Key>> heap_;  // N(u): (lev(v) + w(u,v), v)
  std::set<Key> queue_;              // Q keyed by level
  std::vector<std::uint8_t> in_queue_;
  std::unordered_map<NodeId, Weight> op_start_level_;
  std::uint64_t work_ = 0;
  std::uint64_t edges_ever_ = 0;
  std::uint64_t weight_updates_ = 0;
  std::size_t edge_count_ = 0;
  MonotoneInvariantMonitor* monitor_ = nullptr;
};

// Debug-mode checker for the monotone tree: tracks stretched edges and checks
// level monotonicity, that edges become stretched only on insertion, constant
// levels of stretched nodes, the tree-edge inequality, and the level/weight
// inequality at batch ends. An edge (u,v) counts as stretched when lev(u) is
// finite and lev(u) > lev(v) + w.
class MonotoneInvariantMonitor {
 public:
  void attach(const MonotoneEsTree& t);
  void before_op(const MonotoneEsTree& t);
  void after_op(const MonotoneEsTree& t, MonotoneEsTree::Op op, NodeId u, NodeId v);
  void batch_end(const MonotoneEsTree& t);

  const std::vector<std::string>& violations() const { return violations_; }
  std::uint64_t checks() const { return checks_; }
  std::uint64_t stretched_seen() const { return stretched_seen_; }

 private:
  using Arc = std::pair<NodeId, NodeId>;
  std::set<Arc> stretched(const MonotoneEsTree& t) const;
  void fail(std::string msg);

  std::vector<Weight> before_levels_;
  std::vector<Weight> batch_levels_;
  std::set<Arc> before_stretched_;
  std::vector<std::string> violations_;
  std::uint64_t checks_ = 0;
  std::uint64_t stretched_seen_ = 0;
};

}  // namespace decrsp
