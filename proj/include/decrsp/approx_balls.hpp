#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "decrsp/graph.hpp"
#include "decrsp/parallel.hpp"
#include "decrsp/priority_sampler.hpp"
#include "decrsp/sssp_contract.hpp"

namespace decrsp {

using BigRational = boost::multiprecision::cpp_rational;
BigRational to_big(const Rational& r);  // finite values only

struct BallEvent {
  enum class Kind { Join = 0, Est = 1, Leave = 2 };
  Kind kind;
  NodeId u;  // ball owner
  NodeId v;
  Rational estimate;  // infinity for Leave
  friend bool operator==(const BallEvent&, const BallEvent&) = default;
};
using BallChangeSet = std::vector<BallEvent>;
std::string to_string(const BallEvent& e);

struct BallParams {
  int p = 2;
  Rational epsilon{1};
  Weight depth = 0;
  double c = 2.0;
  std::uint64_t seed = 1;
  bool strict_p = true;
  Execution execution = Execution::Serial;
};

// Approximate balls B(u) with radii r(u), maintained through any SSSP contract.
// Membership: v in R(u) with distest(u,v) <= alpha*r(u) + beta, where R(u) is
// the node set within distance floor(r(u)) at the last radius increase.
class BallSystem {
 public:
  BallSystem(const DynamicGraph& g, const BallParams& params, SsspContract contract);
  BallSystem(const DynamicGraph& g, PriorityAssignment assignment, const BallParams& params,
             SsspContract contract);
  ~BallSystem();
  BallSystem(const BallSystem&) = delete;
  BallSystem& operator=(const BallSystem&) = delete;

  // Called after `c` has been applied to the graph. Returns the joins, estimate
  // changes and leaves caused by it, ordered by (u, kind, v).
  const BallChangeSet& update(const ChangeRecord& c);

  NodeId node_count() const { return g_->node_count(); }
  const PriorityAssignment& assignment() const { return assignment_; }
  int priority(NodeId u) const { return assignment_.priority[static_cast<std::size_t>(u)]; }
  const BallParams& params() const { return params_; }
  const Rational& alpha() const { return contract_.alpha; }
  const Rational& beta() const { return contract_.beta; }

  // distest(u, A_i); infinity for i >= p or an empty A_i.
  Rational distest_to_set(NodeId u, int i) const;
  const BigRational& radius(NodeId u) const;
  BigRational threshold(NodeId u) const;
  std::span<const NodeId> region(NodeId u) const;
  bool in_ball(NodeId u, NodeId v) const;
  // Infinity if v is not in B(u).
  Rational distest(NodeId u, NodeId v) const;
  std::vector<std::pair<NodeId, Rational>> members(NodeId u) const;
  int radius_increases(NodeId u) const;
  std::size_t ever_size(NodeId u) const;
  // Current membership as JOIN events, ordered by (u, v).
  BallChangeSet snapshot() const;
  std::uint64_t work() const;

 private:
  struct Ball;
  void rebuild(NodeId u, BallChangeSet& out);
  void forward(NodeId u, const ChangeRecord& c, BallChangeSet& out);
  BigRational radius_for(const Rational& x) const;

  const DynamicGraph* g_;
  BallParams params_;
  SsspContract contract_;
  PriorityAssignment assignment_;
  std::vector<std::unique_ptr<DecrementalSssp>> set_trees_;  // index i: sources A_i
  std::vector<std::unique_ptr<Ball>> balls_;
  std::vector<std::vector<NodeId>> owners_;  // owners_[x]: balls u with x in R(u)
  BallChangeSet events_;
  std::uint64_t work_ = 0;
};

// s(x, l) = a(a+1)^{l-1} x + ((a+1)^l - 1) b / a for l >= 1, s(x, 0) = x.
BigRational witness_bound(const BigRational& a, const BigRational& b, const BigRational& x, int l);

struct Witness {
  enum class Kind { InBall, Node, None };
  Kind kind = Kind::None;
  NodeId node = kNoNode;
  int priority = -1;
};

// Searches v' of priority j > priority(u) with u in B(v') and
// dist(u,v') <= s(dist(u,v), j - i). `dist` is an all-pairs oracle table.
Witness structural_witness(const BallSystem& balls, NodeId u, NodeId v,
                           const std::vector<std::vector<Weight>>& dist);

}  // namespace decrsp
