#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "decrsp/types.hpp"

namespace decrsp {

struct Edge {
  NodeId u;
  NodeId v;
  Weight w;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct UpdateEvent {
  enum class Kind { Delete, IncreaseWeight };
  Kind kind = Kind::Delete;
  NodeId u = 0;
  NodeId v = 0;
  Weight new_weight = 0;  // IncreaseWeight only

  static UpdateEvent deletion(NodeId u, NodeId v) { return {Kind::Delete, u, v, 0}; }
  static UpdateEvent increase(NodeId u, NodeId v, Weight w) {
    return {Kind::IncreaseWeight, u, v, w};
  }
  friend bool operator==(const UpdateEvent&, const UpdateEvent&) = default;
};

// Result of applying an update. new_weight == kInf marks a deletion.
struct ChangeRecord {
  NodeId u = 0;
  NodeId v = 0;
  Weight old_weight = 0;
  Weight new_weight = 0;
  std::uint64_t version = 0;
  bool deleted() const { return new_weight == kInf; }
};

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

class DynamicGraph {
 public:
  struct Arc {
    NodeId to;
    Weight w;
    bool alive;
  };

  DynamicGraph() = default;
  DynamicGraph(NodeId n, Weight max_weight);

  // Construction-time insertion. Rejects self-loops, duplicates and weights outside [1, W].
  void add_edge(NodeId u, NodeId v, Weight w);

  ChangeRecord apply_update(const UpdateEvent& event);

  NodeId node_count() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }
  Weight max_weight() const { return max_weight_; }
  std::uint64_t version() const { return version_; }

  std::optional<Weight> weight(NodeId u, NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const { return weight(u, v).has_value(); }

  // Raw adjacency including tombstones; callers must skip !alive arcs.
  std::span<const Arc> arcs(NodeId u) const { return adj_[static_cast<std::size_t>(u)]; }

  template <class F>
  void for_each_neighbor(NodeId u, F&& f) const {
    for (const Arc& a : adj_[static_cast<std::size_t>(u)])
      if (a.alive) f(a.to, a.w);
  }

  std::size_t degree(NodeId u) const;
  // Live edges with u < v, sorted.
  std::vector<Edge> edges() const;

  void check_node(NodeId u) const;

 private:
  struct Slot {
    std::uint32_t at_u;  // index in adj_[min]
    std::uint32_t at_v;  // index in adj_[max]
  };
  static std::uint64_t key(NodeId u, NodeId v);
  void maybe_compact(NodeId u);

  NodeId n_ = 0;
  Weight max_weight_ = 0;
  std::uint64_t version_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<Arc>> adj_;
  std::vector<std::uint32_t> dead_;
  std::unordered_map<std::uint64_t, Slot> index_;
};

// Node distances sorted by node id.
using DistanceList = std::vector<std::pair<NodeId, Weight>>;

// Multi-source Dijkstra: every source starts at distance 0, which realises an
// artificial root joined by 0-weight edges. Nodes beyond depth_bound are never
// enqueued. Work proportional to the explored region.
DistanceList dijkstra_bounded(const DynamicGraph& g, std::span<const NodeId> sources,
                              Weight depth_bound);
DistanceList dijkstra_bounded(const DynamicGraph& g, NodeId source, Weight depth_bound);

// Dense variant over the whole graph, kInf for unreachable nodes.
std::vector<Weight> dijkstra_all(const DynamicGraph& g, std::span<const NodeId> sources);

// Materialised copy of G|U with local ids 0..|U|-1 in increasing parent-id order.
class InducedSubgraph {
 public:
  InducedSubgraph(const DynamicGraph& parent, std::vector<NodeId> nodes);

  const DynamicGraph& graph() const { return local_; }
  std::span<const NodeId> nodes() const { return nodes_; }
  std::optional<NodeId> to_local(NodeId parent_id) const;
  NodeId to_parent(NodeId local_id) const { return nodes_[static_cast<std::size_t>(local_id)]; }
  bool contains(NodeId parent_id) const { return to_local(parent_id).has_value(); }
  std::uint64_t snapshot_version() const { return snapshot_version_; }

  // Mirrors a parent change onto the local graph if both endpoints are inside.
  std::optional<ChangeRecord> forward(const ChangeRecord& parent_change);

 private:
  std::vector<NodeId> nodes_;
  std::unordered_map<NodeId, NodeId> local_of_;
  DynamicGraph local_;
  std::uint64_t snapshot_version_ = 0;
};

DynamicGraph load_graph(std::istream& in);

struct QueryEvent {
  NodeId u;
  NodeId v;
  friend bool operator==(const QueryEvent&, const QueryEvent&) = default;
};
using StreamItem = std::variant<UpdateEvent, QueryEvent>;

// Parses `D u v`, `I u v w` and `Q u v` lines. `I u v +d` is a delta form,
// converted to an absolute weight by replaying the stream against `initial`.
// Events are validated against the replayed graph state.
std::vector<StreamItem> parse_updates(std::istream& in, const DynamicGraph& initial,
                                      bool allow_queries = false);

void write_graph(std::ostream& out, const DynamicGraph& g);
void write_updates(std::ostream& out, std::span<const StreamItem> items);

}  // namespace decrsp
