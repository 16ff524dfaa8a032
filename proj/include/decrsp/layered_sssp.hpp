#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "decrsp/approx_balls.hpp"
#include "decrsp/es_tree.hpp"
#include "decrsp/hopset_sssp.hpp"
#include "decrsp/parallel.hpp"
#include "decrsp/sssp_contract.hpp"

namespace decrsp {

struct StackOptions {
  std::optional<int> p;
  std::optional<int> q;
  double c = 2.0;
  Rational ball_epsilon{1};
  std::uint64_t seed = 1;
  bool allow_fallback = true;
  Execution execution = Execution::Serial;
  bool monitor = false;  // attach invariant monitors to every monotone tree
};

// p = floor(sqrt(log n) / sqrt(log(8 * 4^3 * log n / eps))), logs base 2.
int formula_p(std::int64_t n, const Rational& epsilon);

// Layer schedule for range R: Delta_k = ceil(R^(k/q)), D_k = ceil(R^((k+2)/q)),
// eps' = eps / (2(q-2)), alpha_k = 1 + 2k eps'.
struct LayerSchedule {
  int p = 0;
  int q = 0;
  Weight range = 0;
  Rational epsilon{1};
  Rational layer_epsilon{1};
  std::vector<Weight> delta;
  std::vector<Weight> depth;
  std::vector<Rational> alpha;
  bool fallback = false;

  static LayerSchedule make(std::int64_t n, Weight range, const Rational& epsilon,
                            const StackOptions& opts);
  int layers() const { return fallback ? 1 : q - 1; }
};

// Range-restricted approximate SSSP: a running minimum over layer 0 (exact
// ES-tree to depth D_0) and layers k >= 1 (balls over the layer k-1 contract
// plus a shortcut-graph monotone tree). Layers above `top` are omitted.
class LayerStack final : public DecrementalSssp {
 public:
  LayerStack(const DynamicGraph& g, std::vector<NodeId> sources, LayerSchedule schedule,
             StackOptions opts, int top = -1);
  ~LayerStack() override;

  NodeId node_count() const override { return g_->node_count(); }
  Rational estimate(NodeId v) const override { return best_[static_cast<std::size_t>(v)]; }
  void update(const ChangeRecord& c, std::vector<EstimateChange>& changed) override;
  std::uint64_t work() const override;

  const LayerSchedule& schedule() const { return schedule_; }
  int top() const { return top_; }
  Rational layer_estimate(int k, NodeId v) const;
  const EsTree& base() const { return *base_; }
  const BallSystem& balls(int k) const { return *layers_[static_cast<std::size_t>(k - 1)].balls; }
  const ShortcutSssp& shortcut(int k) const { return *layers_[static_cast<std::size_t>(k - 1)].hop; }
  std::vector<std::string> monitor_violations() const;

 private:
  struct Layer {
    std::unique_ptr<BallSystem> balls;
    std::unique_ptr<ShortcutSssp> hop;
    std::unique_ptr<MonotoneInvariantMonitor> monitor;
  };

  const DynamicGraph* g_;
  LayerSchedule schedule_;
  StackOptions opts_;
  int top_;
  std::unique_ptr<EsTree> base_;
  std::vector<Layer> layers_;
  std::vector<Rational> best_;
  std::vector<LevelChange> base_scratch_;
  std::vector<EstimateChange> scratch_;
};

// Contract realised by the first `top`+1 layers of the schedule; falls back to
// an exact ES-tree on graphs too small for p priorities.
SsspContract stack_contract(const LayerSchedule& schedule, const StackOptions& opts, int top);

// Full-range SSSP: one layer stack per scale 2^i, i = 0..floor(log2(nW)), on
// G_i'' with weights ceil(w n / (eps' 2^i)), eps' = eps/3, range 4n/eps'.
// Queries read the top of a per-node min-heap.
class FullRangeSssp final : public DecrementalSssp {
 public:
  FullRangeSssp(const DynamicGraph& g, std::vector<NodeId> sources, Rational epsilon,
                StackOptions opts);
  ~FullRangeSssp() override;

  NodeId node_count() const override { return g_->node_count(); }
  Rational estimate(NodeId v) const override;
  void update(const ChangeRecord& c, std::vector<EstimateChange>& changed) override;
  std::uint64_t work() const override;

  // Counted constant-time query.
  Rational query(NodeId v);
  std::uint64_t heap_reads() const { return heap_reads_; }

  int instance_count() const { return static_cast<int>(instances_.size()); }
  const Rational& phi(int i) const { return instances_[static_cast<std::size_t>(i)].phi; }
  const DynamicGraph& scaled_graph(int i) const { return *instances_[static_cast<std::size_t>(i)].graph; }
  const DecrementalSssp& instance(int i) const { return *instances_[static_cast<std::size_t>(i)].stack; }
  Rational instance_value(int i, NodeId v) const;
  const Rational& internal_epsilon() const { return eps_int_; }
  Weight range() const { return range_; }
  // Heap top equals a fresh minimum over instances for every node.
  bool check_heaps() const;
  std::vector<std::string> monitor_violations() const;

 private:
  struct Instance {
    Rational phi;
    Rational inv_phi;  // n / (eps' 2^i)
    std::unique_ptr<DynamicGraph> graph;
    std::unique_ptr<DecrementalSssp> stack;
    std::vector<EstimateChange> changes;
  };
  Weight scaled(const Instance& inst, Weight w) const;

  const DynamicGraph* g_;
  Rational eps_int_;
  Weight range_ = 0;
  StackOptions opts_;
  std::vector<Instance> instances_;
  std::vector<std::vector<Rational>> value_;                      // [v][i]
  std::vector<std::set<std::pair<Rational, int>>> heap_;          // per node
  std::uint64_t heap_reads_ = 0;
};

SsspContract full_range_contract(Rational epsilon, StackOptions opts);

}  // namespace decrsp
