#include "decrsp/layered_sssp.hpp"

#include <algorithm>
#include <cmath>

namespace decrsp {

int formula_p(std::int64_t n, const Rational& epsilon) {
  if (n < 2) return 0;
  double logn = std::log2(static_cast<double>(n));
  double inner = std::log2(8.0 * 64.0 * logn / epsilon.to_double());
  if (inner <= 0) return 0;
  return static_cast<int>(std::floor(std::sqrt(logn) / std::sqrt(inner)));
}

LayerSchedule LayerSchedule::make(std::int64_t n, Weight range, const Rational& epsilon,
                                  const StackOptions& opts) {
  if (range < 1) throw ConfigError("range R must be positive");
  if (!(epsilon > Rational(0)) || epsilon > Rational(1))
    throw ConfigError("epsilon must lie in (0, 1]");
  LayerSchedule s;
  s.range = range;
  s.epsilon = epsilon;
  if (opts.p && opts.q) {
    s.p = *opts.p;
    s.q = *opts.q;
  } else if (opts.p) {
    s.p = *opts.p;
    s.q = static_cast<int>(std::floor(std::sqrt(static_cast<double>(s.p))));
  } else if (opts.q) {
    s.q = *opts.q;
    s.p = std::max(2, formula_p(n, epsilon));
  } else {
    s.p = formula_p(n, epsilon);
    s.q = static_cast<int>(std::floor(std::sqrt(static_cast<double>(std::max(s.p, 0)))));
  }
  if (s.q < 3) {
    if (!opts.allow_fallback)
      throw ConfigError("q=" + std::to_string(s.q) + " < 3 and fallback disabled");
    s.fallback = true;
    s.delta = {1};
    s.depth = {range};
    s.alpha = {Rational(1)};
    return s;
  }
  if (s.p < 2) throw ConfigError("p must be at least 2 for a layered stack");
  s.layer_epsilon = epsilon / Rational(2 * (s.q - 2));
  const BigInt R(range);
  for (int k = 0; k <= s.q - 2; ++k) {
    s.delta.push_back(static_cast<Weight>(ceil_root(boost::multiprecision::pow(R, k), s.q)));
    s.depth.push_back(k == s.q - 2
                          ? range
                          : static_cast<Weight>(ceil_root(boost::multiprecision::pow(R, k + 2), s.q)));
    s.alpha.push_back(Rational(1) + Rational(2 * k) * s.layer_epsilon);
  }
  return s;
}

SsspContract stack_contract(const LayerSchedule& schedule, const StackOptions& opts, int top) {
  SsspContract c;
  c.alpha = schedule.alpha[static_cast<std::size_t>(top)];
  c.beta = Rational(0);
  c.name = "layers0.." + std::to_string(top);
  StackOptions inner = opts;
  inner.monitor = false;
  c.make = [schedule, inner, top](const DynamicGraph& g, std::vector<NodeId> sources,
                                  Weight depth) -> std::unique_ptr<DecrementalSssp> {
    const NodeId n = g.node_count();
    bool tiny = n < 4 || schedule.p > std::log2(static_cast<double>(n));
    if (top == 0 || tiny) return std::make_unique<EsTreeSssp>(g, std::move(sources), depth);
    return std::make_unique<LayerStack>(g, std::move(sources), schedule, inner, top);
  };
  return c;
}

LayerStack::LayerStack(const DynamicGraph& g, std::vector<NodeId> sources, LayerSchedule schedule,
                       StackOptions opts, int top)
    : g_(&g), schedule_(std::move(schedule)), opts_(opts) {
  top_ = top < 0 ? schedule_.layers() - 1 : std::min(top, schedule_.layers() - 1);
  base_ = std::make_unique<EsTree>(g, sources, schedule_.depth[0]);
  for (int k = 1; k <= top_; ++k) {
    Layer layer;
    BallParams bp;
    bp.p = schedule_.p;
    bp.epsilon = opts_.ball_epsilon;
    bp.depth = schedule_.depth[static_cast<std::size_t>(k - 1)];
    bp.c = opts_.c;
    bp.seed = opts_.seed + 7919u * static_cast<std::uint64_t>(k);
    bp.strict_p = false;
    bp.execution = opts_.execution;
    layer.balls = std::make_unique<BallSystem>(g, bp, stack_contract(schedule_, opts_, k - 1));
    HopsetParams hp = hopset_params_for(*layer.balls, schedule_.layer_epsilon, schedule_.p,
                                        schedule_.delta[static_cast<std::size_t>(k)],
                                        schedule_.depth[static_cast<std::size_t>(k)], g.node_count());
    layer.hop = std::make_unique<ShortcutSssp>(g, *layer.balls, sources, hp);
    if (opts_.monitor) {
      layer.monitor = std::make_unique<MonotoneInvariantMonitor>();
      layer.hop->set_monitor(layer.monitor.get());
    }
    layers_.push_back(std::move(layer));
  }
  best_.resize(static_cast<std::size_t>(g.node_count()));
  for (NodeId v = 0; v < g.node_count(); ++v) {
    Rational b = layer_estimate(0, v);
    for (int k = 1; k <= top_; ++k) b = min(b, layer_estimate(k, v));
    best_[v] = b;
  }
}

LayerStack::~LayerStack() = default;

Rational LayerStack::layer_estimate(int k, NodeId v) const {
  if (k == 0) return Rational::from_weight(base_->level(v));
  return layers_[static_cast<std::size_t>(k - 1)].hop->estimate(v);
}

void LayerStack::update(const ChangeRecord& c, std::vector<EstimateChange>& changed) {
  std::vector<NodeId> touched;
  base_scratch_.clear();
  base_->update(c, base_scratch_);
  for (const LevelChange& lc : base_scratch_) touched.push_back(lc.node);
  for (Layer& layer : layers_) {
    const BallChangeSet& events = layer.balls->update(c);
    scratch_.clear();
    layer.hop->update(c, events, scratch_);
    for (const EstimateChange& ec : scratch_) touched.push_back(ec.node);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  for (NodeId v : touched) {
    Rational b = layer_estimate(0, v);
    for (int k = 1; k <= top_; ++k) b = min(b, layer_estimate(k, v));
    if (b != best_[v]) {
      best_[v] = b;
      changed.push_back({v, b});
    }
  }
}

std::uint64_t LayerStack::work() const {
  std::uint64_t w = base_->work();
  for (const Layer& layer : layers_) w += layer.balls->work() + layer.hop->work();
  return w;
}

std::vector<std::string> LayerStack::monitor_violations() const {
  std::vector<std::string> out;
  for (const Layer& layer : layers_)
    if (layer.monitor) out.insert(out.end(), layer.monitor->violations().begin(), layer.monitor->violations().end());
  return out;
}

FullRangeSssp::FullRangeSssp(const DynamicGraph& g, std::vector<NodeId> sources, Rational epsilon,
                             StackOptions opts)
    : g_(&g), eps_int_(epsilon / Rational(3)), opts_(opts) {
  if (!(epsilon > Rational(0)) || epsilon > Rational(1))
    throw ConfigError("epsilon must lie in (0, 1]");
  const std::int64_t n = g.node_count();
  const auto nn = static_cast<std::size_t>(n);
  value_.assign(nn, {});
  heap_.assign(nn, {});
  if (n == 0) return;
  const Weight W = g.max_weight();
  int top = 0;
  while ((Weight{2} << top) <= n * W) ++top;  // floor(log2(nW))
  range_ = (Rational(4 * n) / eps_int_).ceil();
  LayerSchedule schedule = LayerSchedule::make(n, range_, eps_int_, opts_);

  instances_.resize(static_cast<std::size_t>(top) + 1);
  for (int i = 0; i <= top; ++i) {
    Instance& inst = instances_[static_cast<std::size_t>(i)];
    inst.phi = eps_int_ * Rational(Weight{1} << i) / Rational(n);
    inst.inv_phi = Rational(n) / (eps_int_ * Rational(Weight{1} << i));
    Weight maxw = std::max<Weight>(1, (Rational(W) * inst.inv_phi).ceil());
    inst.graph = std::make_unique<DynamicGraph>(static_cast<NodeId>(n), maxw);
    for (const Edge& e : g.edges()) inst.graph->add_edge(e.u, e.v, scaled(inst, e.w));
  }
  for_each_index(opts_.execution, instances_.size(), [&](std::size_t i) {
    Instance& inst = instances_[i];
    inst.stack = std::make_unique<LayerStack>(*inst.graph, sources, schedule, opts_);
  });
  for (std::size_t v = 0; v < nn; ++v) {
    value_[v].resize(instances_.size());
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      value_[v][i] = instance_value(static_cast<int>(i), static_cast<NodeId>(v));
      heap_[v].emplace(value_[v][i], static_cast<int>(i));
    }
  }
}

FullRangeSssp::~FullRangeSssp() = default;

Weight FullRangeSssp::scaled(const Instance& inst, Weight w) const {
  if (w == kInf) return kInf;
  return (Rational(w) * inst.inv_phi).ceil();
}

Rational FullRangeSssp::instance_value(int i, NodeId v) const {
  const Instance& inst = instances_[static_cast<std::size_t>(i)];
  Rational e = inst.stack->estimate(v);
  return e.is_infinite() ? e : inst.phi * e;
}

Rational FullRangeSssp::estimate(NodeId v) const {
  const auto& h = heap_[static_cast<std::size_t>(v)];
  return h.empty() ? Rational::infinity() : h.begin()->first;
}

Rational FullRangeSssp::query(NodeId v) {
  ++heap_reads_;
  return estimate(v);
}

void FullRangeSssp::update(const ChangeRecord& c, std::vector<EstimateChange>& changed) {
  for_each_index(opts_.execution, instances_.size(), [&](std::size_t i) {
    Instance& inst = instances_[i];
    inst.changes.clear();
    Weight old = *inst.graph->weight(c.u, c.v);
    ChangeRecord local;
    if (c.deleted()) {
      local = inst.graph->apply_update(UpdateEvent::deletion(c.u, c.v));
    } else {
      Weight next = scaled(inst, c.new_weight);
      if (next <= old) return;
      local = inst.graph->apply_update(UpdateEvent::increase(c.u, c.v, next));
    }
    inst.stack->update(local, inst.changes);
  });
  std::vector<std::pair<NodeId, Rational>> before;
  for (const Instance& inst : instances_)
    for (const EstimateChange& ec : inst.changes) before.emplace_back(ec.node, Rational());
  std::sort(before.begin(), before.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  before.erase(std::unique(before.begin(), before.end(),
                           [](const auto& a, const auto& b) { return a.first == b.first; }),
               before.end());
  for (auto& [v, old] : before) old = estimate(v);
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    for (const EstimateChange& ec : instances_[i].changes) {
      auto v = static_cast<std::size_t>(ec.node);
      Rational next = ec.estimate.is_infinite() ? ec.estimate : instances_[i].phi * ec.estimate;
      heap_[v].erase({value_[v][i], static_cast<int>(i)});
      value_[v][i] = next;
      heap_[v].emplace(next, static_cast<int>(i));
    }
  }
  for (const auto& [v, old] : before) {
    Rational now = estimate(v);
    if (now != old) changed.push_back({v, now});
  }
}

std::uint64_t FullRangeSssp::work() const {
  std::uint64_t w = 0;
  for (const Instance& inst : instances_) w += inst.stack->work();
  return w;
}

bool FullRangeSssp::check_heaps() const {
  for (NodeId v = 0; v < node_count(); ++v) {
    Rational fresh = Rational::infinity();
    for (int i = 0; i < instance_count(); ++i) fresh = min(fresh, instance_value(i, v));
    if (fresh != estimate(v)) return false;
  }
  return true;
}

std::vector<std::string> FullRangeSssp::monitor_violations() const {
  std::vector<std::string> out;
  for (const Instance& inst : instances_) {
    auto* stack = dynamic_cast<const LayerStack*>(inst.stack.get());
    if (!stack) continue;
    auto v = stack->monitor_violations();
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

SsspContract full_range_contract(Rational epsilon, StackOptions opts) {
  SsspContract c;
  c.alpha = Rational(1) + epsilon;
  c.beta = Rational(0);
  c.name = "full-range";
  opts.monitor = false;
  c.make = [epsilon, opts](const DynamicGraph& g, std::vector<NodeId> sources,
                           Weight) -> std::unique_ptr<DecrementalSssp> {
    return std::make_unique<FullRangeSssp>(g, std::move(sources), epsilon, opts);
  };
  return c;
}

}  // namespace decrsp
