#include "decrsp/monotone_es_tree.hpp"

#include <algorithm>
#include <queue>

namespace decrsp {

MonotoneEsTree::MonotoneEsTree(NodeId n, std::vector<NodeId> roots, Weight max_level,
                               std::span<const Edge> edges)
    : roots_(std::move(roots)), max_level_(max_level) {
  if (max_level < 0) throw ConfigError("maximum level must be non-negative");
  const auto sz = static_cast<std::size_t>(n);
  std::sort(roots_.begin(), roots_.end());
  roots_.erase(std::unique(roots_.begin(), roots_.end()), roots_.end());
  is_root_.assign(sz, 0);
  level_.assign(sz, kInf);
  parent_.assign(sz, kNoNode);
  adj_.resize(sz);
  heap_.resize(sz);
  in_queue_.assign(sz, 0);
  for (NodeId r : roots_) {
    check_pair(r, r);
    is_root_[r] = 1;
  }
  for (const Edge& e : edges) {
    check_pair(e.u, e.v);
    if (e.w < 0) throw ConfigError("negative weight in monotone tree");
    if (!adj_[e.u].emplace(e.v, e.w).second) throw GraphError("duplicate edge in monotone tree");
    adj_[e.v].emplace(e.u, e.w);
    ++edge_count_;
  }
  edges_ever_ = edge_count_;

  using Item = std::pair<Weight, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (NodeId r : roots_) {
    level_[r] = 0;
    pq.emplace(0, r);
  }
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != level_[u]) continue;
    for (const auto& [v, w] : adj_[u]) {
      ++work_;
      Weight nd = sat_add(d, w);
      if (nd <= max_level_ && nd < level_[v]) {
        level_[v] = nd;
        pq.emplace(nd, v);
      }
    }
  }
  for (NodeId u = 0; u < n; ++u) {
    for (const auto& [v, w] : adj_[u]) {
      ++work_;
      heap_[u].emplace(sat_add(level_[v], w), v);
    }
    if (!is_root(u) && level_[u] != kInf) parent_[u] = heap_[u].begin()->second;
  }
}

namespace {
std::vector<Edge> edges_of(const DynamicGraph& h) { return h.edges(); }
}  // namespace

MonotoneEsTree::MonotoneEsTree(const DynamicGraph& h, std::vector<NodeId> roots,
                               Weight max_level)
    : MonotoneEsTree(h.node_count(), std::move(roots), max_level, edges_of(h)) {}

void MonotoneEsTree::check_pair(NodeId u, NodeId v) const {
  const auto n = static_cast<NodeId>(level_.size());
  if (u < 0 || u >= n || v < 0 || v >= n)
    throw GraphError("node id out of range in monotone tree");
}

std::optional<Weight> MonotoneEsTree::weight(NodeId u, NodeId v) const {
  auto it = adj_[u].find(v);
  if (it == adj_[u].end()) return std::nullopt;
  return it->second;
}

void MonotoneEsTree::set_monitor(MonotoneInvariantMonitor* m) {
  monitor_ = m;
  if (monitor_) monitor_->attach(*this);
}

void MonotoneEsTree::set_weight(NodeId u, NodeId v, Weight w_old, Weight w_new) {
  for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
    if (w_old != kInf) {
      heap_[x].erase({sat_add(level_[y], w_old), y});
      ++work_;
    }
    if (w_new != kInf) {
      heap_[x].emplace(sat_add(level_[y], w_new), y);
      adj_[x][y] = w_new;
      ++work_;
    } else {
      adj_[x].erase(y);
    }
  }
}

void MonotoneEsTree::insert(NodeId u, NodeId v, Weight w) {
  check_pair(u, v);
  if (u == v) throw GraphError("self-loop in monotone tree");
  if (adj_[u].count(v)) throw GraphError("duplicate edge in monotone tree");
  if (monitor_) monitor_->before_op(*this);
  set_weight(u, v, kInf, w);
  ++edge_count_;
  ++edges_ever_;
  ++weight_updates_;
  if (monitor_) monitor_->after_op(*this, Op::Insert, u, v);
}

void MonotoneEsTree::lower(NodeId u, NodeId v, Weight w) {
  check_pair(u, v);
  auto cur = weight(u, v);
  if (!cur) throw GraphError("lowering a missing edge");
  if (w >= *cur) throw GraphError("lower() requires a smaller weight");
  if (monitor_) monitor_->before_op(*this);
  set_weight(u, v, *cur, w);
  ++weight_updates_;
  if (monitor_) monitor_->after_op(*this, Op::Lower, u, v);
}

void MonotoneEsTree::increase(NodeId u, NodeId v, Weight w, std::vector<LevelChange>& changed) {
  check_pair(u, v);
  auto cur = weight(u, v);
  if (!cur) throw GraphError("increasing a missing edge");
  if (w <= *cur) throw GraphError("increase() requires a larger weight");
  if (monitor_) monitor_->before_op(*this);
  set_weight(u, v, *cur, w);
  ++weight_updates_;
  push(u);
  push(v);
  update_levels(changed);
  if (monitor_) monitor_->after_op(*this, w == kInf ? Op::Delete : Op::Increase, u, v);
}

void MonotoneEsTree::remove(NodeId u, NodeId v, std::vector<LevelChange>& changed) {
  check_pair(u, v);
  auto cur = weight(u, v);
  if (!cur) throw GraphError("deleting a missing edge");
  if (monitor_) monitor_->before_op(*this);
  set_weight(u, v, *cur, kInf);
  --edge_count_;
  ++weight_updates_;
  push(u);
  push(v);
  update_levels(changed);
  if (monitor_) monitor_->after_op(*this, Op::Delete, u, v);
}

void MonotoneEsTree::end_batch() {
  if (monitor_) monitor_->batch_end(*this);
}

void MonotoneEsTree::push(NodeId v) {
  if (in_queue_[v]) return;
  in_queue_[v] = 1;
  queue_.emplace(level_[v], v);
  ++work_;
}

void MonotoneEsTree::update_levels(std::vector<LevelChange>& changed) {
  op_start_level_.clear();
  while (!queue_.empty()) {
    NodeId u = queue_.begin()->second;
    queue_.erase(queue_.begin());
    in_queue_[u] = 0;
    ++work_;
    if (is_root(u)) continue;
    const auto& h = heap_[u];
    Weight cand = h.empty() ? kInf : h.begin()->first;
    NodeId arg = h.empty() ? kNoNode : h.begin()->second;
    if (cand <= level_[u]) {
      if (level_[u] != kInf) parent_[u] = arg;
      continue;
    }
    Weight old = level_[u];
    Weight next = cand > max_level_ ? kInf : cand;
    op_start_level_.try_emplace(u, old);
    level_[u] = next;
    parent_[u] = next == kInf ? kNoNode : arg;
    for (const auto& [v, w] : adj_[u]) {
      auto& hv = heap_[v];
      hv.erase({sat_add(old, w), u});
      hv.emplace(sat_add(next, w), u);
      work_ += 2;
      push(v);
    }
  }
  std::vector<LevelChange> local;
  for (const auto& [u, old] : op_start_level_)
    if (level_[u] != old) local.push_back({u, level_[u]});
  std::sort(local.begin(), local.end(),
            [](const LevelChange& a, const LevelChange& b) { return a.node < b.node; });
  changed.insert(changed.end(), local.begin(), local.end());
}

std::set<MonotoneInvariantMonitor::Arc> MonotoneInvariantMonitor::stretched(
    const MonotoneEsTree& t) const {
  std::set<Arc> s;
  t.for_each_edge([&](NodeId u, NodeId v, Weight w) {
    for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
      Weight lx = t.level(x);
      if (lx != kInf && lx > sat_add(t.level(y), w)) s.emplace(x, y);
    }
  });
  return s;
}

void MonotoneInvariantMonitor::fail(std::string msg) { violations_.push_back(std::move(msg)); }

void MonotoneInvariantMonitor::attach(const MonotoneEsTree& t) {
  batch_levels_.assign(static_cast<std::size_t>(t.node_count()), 0);
  for (NodeId v = 0; v < t.node_count(); ++v) batch_levels_[v] = t.level(v);
  before_stretched_ = stretched(t);
  if (!before_stretched_.empty()) fail("stretched edge after initialization");
}

void MonotoneInvariantMonitor::before_op(const MonotoneEsTree& t) {
  before_levels_.resize(static_cast<std::size_t>(t.node_count()));
  for (NodeId v = 0; v < t.node_count(); ++v) before_levels_[v] = t.level(v);
  before_stretched_ = stretched(t);
}

void MonotoneInvariantMonitor::after_op(const MonotoneEsTree& t, MonotoneEsTree::Op op,
                                        NodeId u, NodeId v) {
  ++checks_;
  auto tag = [&](const char* what, NodeId x) {
    return std::string(what) + " at node " + std::to_string(x) + " after op on (" +
           std::to_string(u) + "," + std::to_string(v) + ")";
  };
  for (NodeId x = 0; x < t.node_count(); ++x)
    if (t.level(x) < before_levels_[x]) fail(tag("level decreased", x));

  auto now = stretched(t);
  stretched_seen_ += now.size();
  bool insertion = op == MonotoneEsTree::Op::Insert || op == MonotoneEsTree::Op::Lower;
  for (const Arc& a : now) {
    if (before_stretched_.count(a)) continue;
    bool is_this = (a == Arc{u, v} || a == Arc{v, u});
    if (!(insertion && is_this)) fail(tag("edge became stretched without insertion", a.first));
  }
  std::set<NodeId> was, is;
  for (const Arc& a : before_stretched_) was.insert(a.first);
  for (const Arc& a : now) is.insert(a.first);
  for (NodeId x : was)
    if (is.count(x) && t.level(x) != before_levels_[x])
      fail(tag("stretched node changed level", x));

  for (NodeId x = 0; x < t.node_count(); ++x) {
    NodeId p = t.parent(x);
    if (p == kNoNode || t.level(x) == kInf) continue;
    auto w = t.weight(x, p);
    if (!w || t.level(x) < sat_add(t.level(p), *w)) fail(tag("tree-edge inequality", x));
  }
  before_stretched_ = std::move(now);
}

void MonotoneInvariantMonitor::batch_end(const MonotoneEsTree& t) {
  ++checks_;
  auto s = stretched(t);
  t.for_each_edge([&](NodeId u, NodeId v, Weight w) {
    for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
      Weight bound = sat_add(t.level(y), w);
      if (s.count({x, y}) || bound > t.max_level() || batch_levels_[x] == kInf) continue;
      if (t.level(x) > bound)
        fail("level/weight inequality violated at node " + std::to_string(x) + " via " +
             std::to_string(y));
    }
  });
  for (NodeId v = 0; v < t.node_count(); ++v) batch_levels_[v] = t.level(v);
}

}  // namespace decrsp
