#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <unordered_map>
#include <vector>

#include "decrsp/approx_balls.hpp"
#include "decrsp/layered_sssp.hpp"

namespace decrsp {

struct ApspOptions {
  int k = 2;
  Rational epsilon{1, 2};
  std::uint64_t seed = 1;
  double c = 2.0;
  StackOptions stack;  // p/q overrides for the full-range contract
  Execution execution = Execution::Serial;
};

struct ApspAnswer {
  Rational estimate;
  int expansions = 0;  // Query invocations, including the outermost
};

// Decremental approximate APSP: balls with p = k over the full-range SSSP
// contract (internal epsilon eps/7), plus per-node heaps c_j(v) over the
// priority-j owners whose ball contains v.
class ApspOracle {
 public:
  ApspOracle(const DynamicGraph& g, const ApspOptions& opts);

  // Call after applying the update to the graph.
  void update(const ChangeRecord& c);
  ApspAnswer query(NodeId u, NodeId v) const;

  // Node u of priority j with v in B(u) and minimum distest(u,v), ties by id.
  std::optional<NodeId> center(NodeId v, int j) const;
  const BallSystem& balls() const { return *balls_; }
  const Rational& internal_epsilon() const { return eps_int_; }
  int k() const { return opts_.k; }
  // Rebuilds heaps from a journal replay and compares every c_j(v).
  bool heaps_match_replay() const;
  // Compares every c_j(v) with a brute-force minimum over current balls.
  bool heaps_match_balls() const;
  std::uint64_t work() const { return balls_->work() + heap_ops_; }

 private:
  using Heap = std::set<std::pair<Rational, NodeId>>;
  Rational query_rec(NodeId u, NodeId v, std::unordered_map<NodeId, Rational>& memo,
                     int& expansions) const;
  void apply(const BallEvent& e);
  std::uint64_t key(NodeId u, NodeId v) const {
    return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(g_->node_count()) +
           static_cast<std::uint64_t>(v);
  }

  const DynamicGraph* g_;
  ApspOptions opts_;
  Rational eps_int_;
  std::unique_ptr<BallSystem> balls_;
  std::vector<std::vector<Heap>> heap_;  // heap_[v][j]
  std::unordered_map<std::uint64_t, Rational> keys_;
  std::vector<BallEvent> journal_;  // initial snapshot followed by every update's events
  std::uint64_t heap_ops_ = 0;
};

}  // namespace decrsp
