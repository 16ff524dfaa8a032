#include "decrsp/approx_balls.hpp"

#include <algorithm>
#include <tuple>

namespace decrsp {

BigRational to_big(const Rational& r) {
  if (r.is_infinite()) throw std::domain_error("infinite value has no exact big rational");
  return BigRational(r.num()) / BigRational(r.den());
}

namespace {

bool within(const Rational& est, const BigRational& threshold) {
  return !est.is_infinite() && to_big(est) <= threshold;
}

Weight big_floor(const BigRational& r) {
  using boost::multiprecision::cpp_int;
  cpp_int q = boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
  if (r < 0 && BigRational(q) != r) q -= 1;
  return static_cast<Weight>(q);
}

const char* kind_name(BallEvent::Kind k) {
  switch (k) {
    case BallEvent::Kind::Join: return "JOIN";
    case BallEvent::Kind::Est: return "EST";
    case BallEvent::Kind::Leave: return "LEAVE";
  }
  return "?";
}

void sort_events(BallChangeSet& ev) {
  std::sort(ev.begin(), ev.end(), [](const BallEvent& a, const BallEvent& b) {
    return std::tuple(a.u, static_cast<int>(a.kind), a.v) <
           std::tuple(b.u, static_cast<int>(b.kind), b.v);
  });
}

}  // namespace

std::string to_string(const BallEvent& e) {
  std::string s = std::string(kind_name(e.kind)) + " " + std::to_string(e.u) + " " +
                  std::to_string(e.v);
  if (e.kind != BallEvent::Kind::Leave) s += " " + e.estimate.to_string();
  return s;
}

struct BallSystem::Ball {
  BigRational r{-1};
  BigRational threshold{0};
  int increases = 0;
  std::unique_ptr<InducedSubgraph> region;
  std::unique_ptr<DecrementalSssp> inner;
  std::vector<Rational> est;
  std::vector<std::uint8_t> member;
  std::unordered_set<NodeId> ever;
  std::vector<EstimateChange> scratch;
  std::uint64_t retired_work = 0;
  std::uint64_t rebuild_work = 0;
};

BallSystem::BallSystem(const DynamicGraph& g, const BallParams& params, SsspContract contract)
    : BallSystem(g, sample_priorities(g, params.p, params.c, params.seed, params.strict_p), params,
                 std::move(contract)) {}

BallSystem::BallSystem(const DynamicGraph& g, PriorityAssignment assignment,
                       const BallParams& params, SsspContract contract)
    : g_(&g), params_(params), contract_(std::move(contract)), assignment_(std::move(assignment)) {
  if (params_.p < 2) throw ConfigError("ball system needs p >= 2");
  if (assignment_.p != params_.p) throw ConfigError("priority assignment has a different p");
  if (!(params_.epsilon > Rational(0)) || params_.epsilon > Rational(1))
    throw ConfigError("ball epsilon must lie in (0, 1]");
  if (params_.depth < 0) throw ConfigError("ball depth must be non-negative");
  if (contract_.alpha < Rational(1) || contract_.beta < Rational(0))
    throw ConfigError("contract needs alpha >= 1 and beta >= 0");
  if (!contract_.make) throw ConfigError("contract has no factory");

  const int p = params_.p;
  set_trees_.resize(static_cast<std::size_t>(p));
  for_each_index(params_.execution, static_cast<std::size_t>(p), [&](std::size_t i) {
    if (i == 0 || assignment_.sets[i].empty()) return;
    set_trees_[i] = contract_.make(*g_, assignment_.sets[i], params_.depth);
  });

  const auto n = static_cast<std::size_t>(g.node_count());
  balls_.resize(n);
  owners_.resize(n);
  for (std::size_t u = 0; u < n; ++u) balls_[u] = std::make_unique<Ball>();
  for_each_index(params_.execution, n, [&](std::size_t u) {
    auto x = distest_to_set(static_cast<NodeId>(u), priority(static_cast<NodeId>(u)) + 1);
    balls_[u]->r = radius_for(x);
    BallChangeSet ignored;
    rebuild(static_cast<NodeId>(u), ignored);
  });
  for (std::size_t u = 0; u < n; ++u)
    for (NodeId x : balls_[u]->region->nodes()) owners_[x].push_back(static_cast<NodeId>(u));
}

BallSystem::~BallSystem() = default;

Rational BallSystem::distest_to_set(NodeId u, int i) const {
  if (i <= 0) return Rational(0);
  if (i >= params_.p || !set_trees_[static_cast<std::size_t>(i)]) return Rational::infinity();
  return set_trees_[static_cast<std::size_t>(i)]->estimate(u);
}

BigRational BallSystem::radius_for(const Rational& x) const {
  const BigRational depth(params_.depth);
  if (x.is_infinite()) return depth;
  if (x < Rational(2)) return BigRational(0);
  const BigRational alpha = to_big(contract_.alpha);
  const BigRational beta = to_big(contract_.beta);
  const BigRational y = to_big(x) - 1;
  const BigRational q = 1 + to_big(params_.epsilon);
  const BigRational limit = alpha * depth + beta;
  BigRational pw(1);
  while (pw * q <= y && pw <= limit) pw *= q;
  BigRational r = (pw - beta) / alpha;
  if (r < 0) r = 0;
  if (r > depth) r = depth;
  return r;
}

void BallSystem::rebuild(NodeId u, BallChangeSet& out) {
  Ball& b = *balls_[static_cast<std::size_t>(u)];
  std::vector<std::pair<NodeId, Rational>> old;
  if (b.region) {
    old = members(u);
    b.retired_work += b.inner->work();
  }
  auto reach = dijkstra_bounded(*g_, u, big_floor(b.r));
  b.rebuild_work += reach.size();
  std::vector<NodeId> nodes;
  nodes.reserve(reach.size());
  for (const auto& [v, d] : reach) nodes.push_back(v);
  b.region = std::make_unique<InducedSubgraph>(*g_, std::move(nodes));
  NodeId local_u = *b.region->to_local(u);
  b.inner = contract_.make(b.region->graph(), {local_u}, params_.depth);
  b.threshold = to_big(contract_.alpha) * b.r + to_big(contract_.beta);

  const auto k = b.region->nodes().size();
  b.est.assign(k, Rational::infinity());
  b.member.assign(k, 0);
  auto old_it = old.begin();
  for (std::size_t x = 0; x < k; ++x) {
    NodeId v = b.region->to_parent(static_cast<NodeId>(x));
    Rational fresh = b.inner->estimate(static_cast<NodeId>(x));
    while (old_it != old.end() && old_it->first < v) {
      out.push_back({BallEvent::Kind::Leave, u, old_it->first, Rational::infinity()});
      ++old_it;
    }
    bool was = old_it != old.end() && old_it->first == v;
    Rational est = was ? max(old_it->second, fresh) : fresh;
    b.est[x] = est;
    if (within(est, b.threshold)) {
      b.member[x] = 1;
      b.ever.insert(v);
      if (!was)
        out.push_back({BallEvent::Kind::Join, u, v, est});
      else if (est != old_it->second)
        out.push_back({BallEvent::Kind::Est, u, v, est});
    } else if (was) {
      out.push_back({BallEvent::Kind::Leave, u, v, Rational::infinity()});
    }
    if (was) ++old_it;
  }
  for (; old_it != old.end(); ++old_it)
    out.push_back({BallEvent::Kind::Leave, u, old_it->first, Rational::infinity()});
}

void BallSystem::forward(NodeId u, const ChangeRecord& c, BallChangeSet& out) {
  Ball& b = *balls_[static_cast<std::size_t>(u)];
  auto local = b.region->forward(c);
  if (!local) return;
  b.scratch.clear();
  b.inner->update(*local, b.scratch);
  for (const EstimateChange& ch : b.scratch) {
    auto x = static_cast<std::size_t>(ch.node);
    Rational next = max(b.est[x], ch.estimate);
    if (next == b.est[x]) continue;
    b.est[x] = next;
    NodeId v = b.region->to_parent(ch.node);
    bool inside = within(next, b.threshold);
    if (b.member[x] && !inside) {
      b.member[x] = 0;
      out.push_back({BallEvent::Kind::Leave, u, v, Rational::infinity()});
    } else if (b.member[x]) {
      out.push_back({BallEvent::Kind::Est, u, v, next});
    } else if (inside) {
      b.member[x] = 1;
      b.ever.insert(v);
      out.push_back({BallEvent::Kind::Join, u, v, next});
    }
  }
}

const BallChangeSet& BallSystem::update(const ChangeRecord& c) {
  events_.clear();
  const int p = params_.p;

  std::vector<std::vector<EstimateChange>> tree_changes(static_cast<std::size_t>(p));
  for_each_index(params_.execution, static_cast<std::size_t>(p), [&](std::size_t i) {
    if (set_trees_[i]) set_trees_[i]->update(c, tree_changes[i]);
  });

  std::vector<NodeId> rebuilt;
  for (int i = 1; i < p; ++i)
    for (const EstimateChange& ch : tree_changes[static_cast<std::size_t>(i)]) {
      if (priority(ch.node) != i - 1) continue;
      Ball& b = *balls_[static_cast<std::size_t>(ch.node)];
      BigRational next = radius_for(ch.estimate);
      if (next > b.r) {
        b.r = next;
        ++b.increases;
        rebuilt.push_back(ch.node);
      }
    }
  std::sort(rebuilt.begin(), rebuilt.end());
  rebuilt.erase(std::unique(rebuilt.begin(), rebuilt.end()), rebuilt.end());

  struct Task {
    NodeId u;
    bool rebuild;
    std::vector<NodeId> old_region;
    BallChangeSet events;
  };
  std::vector<Task> tasks;
  for (NodeId u : rebuilt) {
    auto nodes = balls_[static_cast<std::size_t>(u)]->region->nodes();
    tasks.push_back({u, true, std::vector<NodeId>(nodes.begin(), nodes.end()), {}});
  }
  for (NodeId u : owners_[static_cast<std::size_t>(c.u)]) {
    if (std::binary_search(rebuilt.begin(), rebuilt.end(), u)) continue;
    if (balls_[static_cast<std::size_t>(u)]->region->contains(c.v)) tasks.push_back({u, false, {}, {}});
  }
  std::sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) { return a.u < b.u; });

  for_each_index(params_.execution, tasks.size(), [&](std::size_t t) {
    Task& task = tasks[t];
    if (task.rebuild)
      rebuild(task.u, task.events);
    else
      forward(task.u, c, task.events);
    sort_events(task.events);
  });

  for (Task& task : tasks) {
    if (task.rebuild) {
      for (NodeId x : task.old_region) {
        auto& list = owners_[static_cast<std::size_t>(x)];
        list.erase(std::find(list.begin(), list.end(), task.u));
      }
      for (NodeId x : balls_[static_cast<std::size_t>(task.u)]->region->nodes())
        owners_[static_cast<std::size_t>(x)].push_back(task.u);
    }
    events_.insert(events_.end(), task.events.begin(), task.events.end());
  }
  return events_;
}

const BigRational& BallSystem::radius(NodeId u) const { return balls_[u]->r; }

BigRational BallSystem::threshold(NodeId u) const { return balls_[u]->threshold; }

std::span<const NodeId> BallSystem::region(NodeId u) const { return balls_[u]->region->nodes(); }

bool BallSystem::in_ball(NodeId u, NodeId v) const {
  const Ball& b = *balls_[static_cast<std::size_t>(u)];
  auto x = b.region->to_local(v);
  return x && b.member[static_cast<std::size_t>(*x)];
}

Rational BallSystem::distest(NodeId u, NodeId v) const {
  const Ball& b = *balls_[static_cast<std::size_t>(u)];
  auto x = b.region->to_local(v);
  if (!x || !b.member[static_cast<std::size_t>(*x)]) return Rational::infinity();
  return b.est[static_cast<std::size_t>(*x)];
}

std::vector<std::pair<NodeId, Rational>> BallSystem::members(NodeId u) const {
  const Ball& b = *balls_[static_cast<std::size_t>(u)];
  std::vector<std::pair<NodeId, Rational>> out;
  for (std::size_t x = 0; x < b.member.size(); ++x)
    if (b.member[x]) out.emplace_back(b.region->to_parent(static_cast<NodeId>(x)), b.est[x]);
  return out;
}

int BallSystem::radius_increases(NodeId u) const { return balls_[u]->increases; }

std::size_t BallSystem::ever_size(NodeId u) const { return balls_[u]->ever.size(); }

BallChangeSet BallSystem::snapshot() const {
  BallChangeSet out;
  for (NodeId u = 0; u < node_count(); ++u)
    for (const auto& [v, est] : members(u)) out.push_back({BallEvent::Kind::Join, u, v, est});
  return out;
}

std::uint64_t BallSystem::work() const {
  std::uint64_t total = work_;
  for (const auto& t : set_trees_)
    if (t) total += t->work();
  for (const auto& b : balls_) total += b->retired_work + b->rebuild_work + b->inner->work();
  return total;
}

BigRational witness_bound(const BigRational& a, const BigRational& b, const BigRational& x,
                          int l) {
  if (l <= 0) return x;
  BigRational pw(1);
  for (int i = 0; i < l - 1; ++i) pw *= (a + 1);
  return a * pw * x + (pw * (a + 1) - 1) * b / a;
}

Witness structural_witness(const BallSystem& balls, NodeId u, NodeId v,
                           const std::vector<std::vector<Weight>>& dist) {
  Witness w;
  if (balls.in_ball(u, v)) {
    w.kind = Witness::Kind::InBall;
    return w;
  }
  Weight d = dist[u][v];
  if (d == kInf) return w;
  const BigRational eps = to_big(balls.params().epsilon);
  const BigRational a = (1 + eps) * to_big(balls.alpha());
  const BigRational b = (1 + eps) * to_big(balls.beta()) + 1;
  const int i = balls.priority(u);
  for (int j = i + 1; j < balls.params().p; ++j) {
    const BigRational bound = witness_bound(a, b, BigRational(d), j - i);
    for (NodeId x = 0; x < balls.node_count(); ++x) {
      if (balls.priority(x) != j || dist[u][x] == kInf) continue;
      if (BigRational(dist[u][x]) <= bound && balls.in_ball(x, u)) {
        w.kind = Witness::Kind::Node;
        w.node = x;
        w.priority = j;
        return w;
      }
    }
  }
  return w;
}

}  // namespace decrsp
