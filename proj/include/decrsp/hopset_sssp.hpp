#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <unordered_map>
#include <vector>

#include "decrsp/approx_balls.hpp"
#include "decrsp/monotone_es_tree.hpp"
#include "decrsp/param_series.hpp"
#include "decrsp/sssp_contract.hpp"

namespace decrsp {

struct HopsetParams {
  Rational alpha{1};    // ball estimates are alpha*dist + beta approximations
  Rational beta{0};
  Rational a{2};        // (1 + eps_ball) * alpha
  Rational b{1};        // (1 + eps_ball) * beta + 1
  Rational epsilon{1};
  int p = 2;
  Weight delta = 1;
  Weight depth = 1;
  std::int64_t n = 2;   // node count entering n^(1/p)
  bool enforce_p_bound = false;
};

// Builds the parameters matching a ball system's contract.
HopsetParams hopset_params_for(const BallSystem& balls, Rational epsilon, int p, Weight delta,
                               Weight depth, std::int64_t n);

// Shortcut graph H'' (G plus ball edges, capped, rounded and scaled by phi)
// driving a monotone ES-tree from the sources. estimate(v) = level(v) * phi.
class ShortcutSssp {
 public:
  ShortcutSssp(const DynamicGraph& g, const BallSystem& balls, std::vector<NodeId> sources,
               const HopsetParams& params);

  // Called after the graph update `c` and the matching ball change set.
  void update(const ChangeRecord& c, const BallChangeSet& ball_changes,
              std::vector<EstimateChange>& changed);

  Rational estimate(NodeId v) const;
  const MonotoneEsTree& tree() const { return *tree_; }
  void set_monitor(MonotoneInvariantMonitor* m) { tree_->set_monitor(m); }
  const ParamSeries& series() const { return series_; }
  const Rational& phi() const { return phi_; }
  const Rational& weight_cap() const { return cap_; }
  Weight max_level() const { return tree_->max_level(); }
  std::uint64_t work() const { return tree_->work(); }
  std::uint64_t edges_ever() const { return tree_->edges_ever(); }
  std::uint64_t weight_updates() const { return tree_->weight_updates(); }

  // Uncapped H weight min(w_G, w_F(u,v), w_F(v,u)); infinity if none.
  Rational h_weight(NodeId u, NodeId v) const;
  // Checks w_H <= phi * w_H'' <= w_H + phi and the cap on every pair.
  bool check_sandwich() const;
  void write_scaled(std::ostream& out) const;

 private:
  struct PairState {
    Weight wg = kInf;
    Rational f_uv = Rational::infinity();  // u < v: ball of u contains v
    Rational f_vu = Rational::infinity();
    Weight scaled = kInf;                  // current weight in H''
  };
  static std::uint64_t key(NodeId u, NodeId v);
  PairState& pair(NodeId u, NodeId v);
  void set_f(NodeId u, NodeId v, const Rational& value, bool clamp);
  Weight target(const PairState& s) const;

  const DynamicGraph* g_;
  HopsetParams params_;
  ParamSeries series_;
  Rational phi_;
  Rational cap_;
  std::unordered_map<std::uint64_t, PairState> pairs_;
  std::unique_ptr<MonotoneEsTree> tree_;
};

}  // namespace decrsp
