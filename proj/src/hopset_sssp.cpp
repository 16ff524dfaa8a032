#include "decrsp/hopset_sssp.hpp"

#include <algorithm>
#include <ostream>

namespace decrsp {

namespace {

Rational to_small(const BigRational& r) {
  namespace mp = boost::multiprecision;
  BigInt num = mp::numerator(r), den = mp::denominator(r);
  constexpr auto hi = std::numeric_limits<std::int64_t>::max();
  if (mp::abs(num) > hi || den > hi) throw std::overflow_error("parameter does not fit 64 bits");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

HopsetParams hopset_params_for(const BallSystem& balls, Rational epsilon, int p, Weight delta,
                               Weight depth, std::int64_t n) {
  HopsetParams hp;
  const Rational one_plus = Rational(1) + balls.params().epsilon;
  hp.alpha = balls.alpha();
  hp.beta = balls.beta();
  hp.a = one_plus * balls.alpha();
  hp.b = one_plus * balls.beta() + Rational(1);
  hp.epsilon = epsilon;
  hp.p = p;
  hp.delta = delta;
  hp.depth = depth;
  hp.n = n;
  return hp;
}

std::uint64_t ShortcutSssp::key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

ShortcutSssp::PairState& ShortcutSssp::pair(NodeId u, NodeId v) { return pairs_[key(u, v)]; }

Weight ShortcutSssp::target(const PairState& s) const {
  Rational w = min(Rational::from_weight(s.wg), min(s.f_uv, s.f_vu));
  if (w.is_infinite() || w > cap_) return kInf;
  return (w / phi_).ceil();
}

void ShortcutSssp::set_f(NodeId u, NodeId v, const Rational& value, bool clamp) {
  PairState& s = pair(u, v);
  Rational& slot = u < v ? s.f_uv : s.f_vu;
  slot = clamp ? max(slot, value) : value;
}

ShortcutSssp::ShortcutSssp(const DynamicGraph& g, const BallSystem& balls,
                           std::vector<NodeId> sources, const HopsetParams& params)
    : g_(&g), params_(params) {
  ParamInputs in;
  in.alpha = to_big(params.alpha);
  in.beta = to_big(params.beta);
  in.a = to_big(params.a);
  in.b = to_big(params.b);
  in.epsilon = to_big(params.epsilon);
  in.p = params.p;
  in.delta = BigRational(params.delta);
  in.depth = BigRational(params.depth);
  in.n = BigInt(params.n);
  series_ = ParamSeries::derive(in, params.enforce_p_bound);
  phi_ = to_small(series_.phi());
  cap_ = to_small(series_.weight_cap());
  const Weight L = static_cast<Weight>(series_.max_level());

  for (const Edge& e : g.edges()) pair(e.u, e.v).wg = e.w;
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (const auto& [v, est] : balls.members(u))
      if (u != v) set_f(u, v, est, false);

  std::vector<std::uint64_t> keys;
  keys.reserve(pairs_.size());
  for (const auto& [k, s] : pairs_) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  std::vector<Edge> edges;
  for (std::uint64_t k : keys) {
    PairState& s = pairs_[k];
    s.scaled = target(s);
    if (s.scaled != kInf)
      edges.push_back({static_cast<NodeId>(k >> 32), static_cast<NodeId>(k & 0xffffffffu), s.scaled});
  }
  tree_ = std::make_unique<MonotoneEsTree>(g.node_count(), std::move(sources), L, edges);
}

void ShortcutSssp::update(const ChangeRecord& c, const BallChangeSet& ball_changes,
                          std::vector<EstimateChange>& changed) {
  std::vector<std::uint64_t> touched;
  pair(c.u, c.v).wg = c.new_weight;
  touched.push_back(key(c.u, c.v));
  for (const BallEvent& e : ball_changes) {
    if (e.u == e.v) continue;
    switch (e.kind) {
      case BallEvent::Kind::Join: set_f(e.u, e.v, e.estimate, false); break;
      case BallEvent::Kind::Est: set_f(e.u, e.v, e.estimate, true); break;
      case BallEvent::Kind::Leave: set_f(e.u, e.v, Rational::infinity(), false); break;
    }
    touched.push_back(key(e.u, e.v));
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

  struct Op {
    NodeId u, v;
    Weight from, to;
  };
  std::vector<Op> raises;
  std::vector<LevelChange> levels;
  for (std::uint64_t k : touched) {
    PairState& s = pairs_[k];
    Weight next = target(s);
    if (next == s.scaled) continue;
    auto u = static_cast<NodeId>(k >> 32), v = static_cast<NodeId>(k & 0xffffffffu);
    if (s.scaled == kInf)
      tree_->insert(u, v, next);
    else if (next < s.scaled)
      tree_->lower(u, v, next);
    else
      raises.push_back({u, v, s.scaled, next});
    s.scaled = next;
  }
  for (const Op& op : raises) {
    if (op.to == kInf)
      tree_->remove(op.u, op.v, levels);
    else
      tree_->increase(op.u, op.v, op.to, levels);
  }
  tree_->end_batch();
  for (auto it = pairs_.begin(); it != pairs_.end();) {
    const PairState& s = it->second;
    if (s.scaled == kInf && s.wg == kInf && s.f_uv.is_infinite() && s.f_vu.is_infinite())
      it = pairs_.erase(it);
    else
      ++it;
  }

  std::sort(levels.begin(), levels.end(),
            [](const LevelChange& a, const LevelChange& b) { return a.node < b.node; });
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i + 1 < levels.size() && levels[i + 1].node == levels[i].node) continue;
    changed.push_back({levels[i].node, estimate(levels[i].node)});
  }
}

Rational ShortcutSssp::estimate(NodeId v) const {
  Weight l = tree_->level(v);
  if (l == kInf) return Rational::infinity();
  return Rational(l) * phi_;
}

Rational ShortcutSssp::h_weight(NodeId u, NodeId v) const {
  auto it = pairs_.find(key(u, v));
  if (it == pairs_.end()) return Rational::infinity();
  const PairState& s = it->second;
  return min(Rational::from_weight(s.wg), min(s.f_uv, s.f_vu));
}

bool ShortcutSssp::check_sandwich() const {
  bool ok = true;
  for (const auto& [k, s] : pairs_) {
    auto u = static_cast<NodeId>(k >> 32), v = static_cast<NodeId>(k & 0xffffffffu);
    Rational w = h_weight(u, v);
    auto in_tree = tree_->weight(u, v);
    bool admitted = !w.is_infinite() && w <= cap_;
    if (admitted != in_tree.has_value()) return false;
    if (!admitted) continue;
    Rational scaled = Rational(*in_tree) * phi_;
    ok = ok && w <= scaled && scaled <= w + phi_;
  }
  return ok;
}

void ShortcutSssp::write_scaled(std::ostream& out) const {
  std::vector<Edge> es;
  Weight top = 1;
  tree_->for_each_edge([&](NodeId u, NodeId v, Weight w) {
    es.push_back({u, v, w});
    top = std::max(top, w);
  });
  std::sort(es.begin(), es.end(),
            [](const Edge& x, const Edge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
  out << tree_->node_count() << ' ' << es.size() << ' ' << top << '\n';
  for (const Edge& e : es) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
}

}  // namespace decrsp
