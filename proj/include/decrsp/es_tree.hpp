#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "decrsp/graph.hpp"

namespace decrsp {

struct LevelChange {
  NodeId node;
  Weight level;
  friend bool operator==(const LevelChange&, const LevelChange&) = default;
};

// Exact decremental SSSP up to depth D. All roots sit at level 0. The tree
// reads the graph through a reference; the owner mutates the graph and then
// calls update() with the resulting ChangeRecord.
class EsTree {
 public:
  EsTree(const DynamicGraph& g, std::vector<NodeId> roots, Weight depth);

  // Restores exact levels after `c` was applied to the graph. Appends every
  // node whose level changed, in increasing id order.
  void update(const ChangeRecord& c, std::vector<LevelChange>& changed);

  Weight level(NodeId v) const { return level_[static_cast<std::size_t>(v)]; }
  NodeId parent(NodeId v) const { return parent_[static_cast<std::size_t>(v)]; }
  Weight depth() const { return depth_; }
  std::span<const NodeId> roots() const { return roots_; }
  std::uint64_t work() const { return work_; }
  const DynamicGraph& graph() const { return *g_; }

 private:
  enum : std::uint8_t { kUnknown = 0, kKept = 1, kAffected = 2 };

  void build();
  bool is_root(NodeId v) const { return is_root_[static_cast<std::size_t>(v)] != 0; }

  const DynamicGraph* g_;
  std::vector<NodeId> roots_;
  Weight depth_;
  std::vector<Weight> level_;
  std::vector<NodeId> parent_;
  std::vector<std::uint8_t> is_root_;
  std::vector<std::uint8_t> state_;
  std::vector<Weight> tentative_;
  std::uint64_t work_ = 0;
};

}  // namespace decrsp
