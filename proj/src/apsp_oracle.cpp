#include "decrsp/apsp_oracle.hpp"

#include <algorithm>

namespace decrsp {

ApspOracle::ApspOracle(const DynamicGraph& g, const ApspOptions& opts)
    : g_(&g), opts_(opts) {
  if (opts.k < 2) throw ConfigError("k must be at least 2");
  if (!(opts.epsilon > Rational(0)) || opts.epsilon > Rational(1))
    throw ConfigError("epsilon must lie in (0, 1]");
  eps_int_ = opts.epsilon / Rational(7);
  const NodeId n = g.node_count();
  BallParams bp;
  bp.p = opts.k;
  bp.epsilon = eps_int_;
  bp.depth = std::max<Weight>(1, static_cast<Weight>(n) * g.max_weight());
  bp.c = opts.c;
  bp.seed = opts.seed;
  bp.strict_p = false;
  bp.execution = opts.execution;
  StackOptions so = opts.stack;
  so.seed = opts.seed + 1;
  so.execution = opts.execution;
  balls_ = std::make_unique<BallSystem>(g, bp, full_range_contract(eps_int_, so));
  heap_.assign(static_cast<std::size_t>(n), std::vector<Heap>(static_cast<std::size_t>(opts.k)));
  for (const BallEvent& e : balls_->snapshot()) {
    journal_.push_back(e);
    apply(e);
  }
}

void ApspOracle::apply(const BallEvent& e) {
  auto j = static_cast<std::size_t>(balls_->priority(e.u));
  Heap& h = heap_[static_cast<std::size_t>(e.v)][j];
  const std::uint64_t kk = key(e.u, e.v);
  ++heap_ops_;
  switch (e.kind) {
    case BallEvent::Kind::Join:
      h.emplace(e.estimate, e.u);
      keys_[kk] = e.estimate;
      break;
    case BallEvent::Kind::Est: {
      auto it = keys_.find(kk);
      h.erase({it->second, e.u});
      it->second = e.estimate;
      h.emplace(e.estimate, e.u);
      break;
    }
    case BallEvent::Kind::Leave: {
      auto it = keys_.find(kk);
      h.erase({it->second, e.u});
      keys_.erase(it);
      break;
    }
  }
}

void ApspOracle::update(const ChangeRecord& c) {
  for (const BallEvent& e : balls_->update(c)) {
    journal_.push_back(e);
    apply(e);
  }
}

std::optional<NodeId> ApspOracle::center(NodeId v, int j) const {
  const Heap& h = heap_[static_cast<std::size_t>(v)][static_cast<std::size_t>(j)];
  if (h.empty()) return std::nullopt;
  return h.begin()->second;
}

ApspAnswer ApspOracle::query(NodeId u, NodeId v) const {
  g_->check_node(u);
  g_->check_node(v);
  std::unordered_map<NodeId, Rational> memo;
  ApspAnswer a;
  a.estimate = query_rec(u, v, memo, a.expansions);
  return a;
}

Rational ApspOracle::query_rec(NodeId u, NodeId v, std::unordered_map<NodeId, Rational>& memo,
                               int& expansions) const {
  ++expansions;
  if (balls_->in_ball(u, v)) return balls_->distest(u, v);
  Rational best = Rational::infinity();
  for (int j = balls_->priority(u) + 1; j < opts_.k; ++j) {
    const Heap& h = heap_[static_cast<std::size_t>(u)][static_cast<std::size_t>(j)];
    if (h.empty()) continue;
    auto [to_u, w] = *h.begin();
    Rational rest;
    if (auto it = memo.find(w); it != memo.end()) {
      rest = it->second;
    } else {
      rest = query_rec(w, v, memo, expansions);
      memo.emplace(w, rest);
    }
    if (!rest.is_infinite()) best = min(best, to_u + rest);
  }
  return best;
}

namespace {

bool same_minima(const std::vector<std::vector<std::set<std::pair<Rational, NodeId>>>>& a,
                 const std::vector<std::vector<std::set<std::pair<Rational, NodeId>>>>& b) {
  for (std::size_t v = 0; v < a.size(); ++v)
    for (std::size_t j = 0; j < a[v].size(); ++j) {
      if (a[v][j].empty() != b[v][j].empty()) return false;
      if (!a[v][j].empty() && *a[v][j].begin() != *b[v][j].begin()) return false;
    }
  return true;
}

}  // namespace

bool ApspOracle::heaps_match_replay() const {
  std::vector<std::vector<Heap>> fresh(heap_.size(), std::vector<Heap>(static_cast<std::size_t>(opts_.k)));
  std::unordered_map<std::uint64_t, Rational> keys;
  for (const BallEvent& e : journal_) {
    Heap& h = fresh[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(balls_->priority(e.u))];
    const std::uint64_t kk = key(e.u, e.v);
    if (e.kind != BallEvent::Kind::Join) {
      auto it = keys.find(kk);
      if (it == keys.end()) return false;
      h.erase({it->second, e.u});
      keys.erase(it);
    }
    if (e.kind != BallEvent::Kind::Leave) {
      h.emplace(e.estimate, e.u);
      keys[kk] = e.estimate;
    }
  }
  return same_minima(heap_, fresh);
}

bool ApspOracle::heaps_match_balls() const {
  std::vector<std::vector<Heap>> fresh(heap_.size(), std::vector<Heap>(static_cast<std::size_t>(opts_.k)));
  for (NodeId u = 0; u < g_->node_count(); ++u)
    for (const auto& [v, est] : balls_->members(u))
      fresh[static_cast<std::size_t>(v)][static_cast<std::size_t>(balls_->priority(u))].emplace(est, u);
  return same_minima(heap_, fresh);
}

}  // namespace decrsp
