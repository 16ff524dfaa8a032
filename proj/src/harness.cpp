#include "decrsp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <unordered_set>

#include "decrsp/apsp_oracle.hpp"
#include "decrsp/es_tree.hpp"
#include "decrsp/priority_sampler.hpp"

namespace decrsp {

GraphModel parse_model(const std::string& name) {
  if (name == "erdos-renyi" || name == "er") return GraphModel::ErdosRenyi;
  if (name == "grid") return GraphModel::Grid;
  if (name == "power-law") return GraphModel::PowerLaw;
  throw ConfigError("unknown graph model '" + name + "'");
}

std::string to_string(GraphModel m) {
  switch (m) {
    case GraphModel::ErdosRenyi: return "erdos-renyi";
    case GraphModel::Grid: return "grid";
    case GraphModel::PowerLaw: return "power-law";
  }
  return "?";
}

std::size_t Schedule::update_count() const {
  return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const StreamItem& s) {
    return std::holds_alternative<UpdateEvent>(s);
  }));
}

namespace {

using Rng = std::mt19937_64;

std::uint64_t pair_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

NodeId uniform_node(Rng& rng, NodeId n) {
  return std::uniform_int_distribution<NodeId>(0, n - 1)(rng);
}

std::vector<std::pair<NodeId, NodeId>> er_pairs(NodeId n, std::int64_t m, Rng& rng) {
  std::vector<std::pair<NodeId, NodeId>> out;
  const std::int64_t total = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (2 * m > total) {
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) out.emplace_back(u, v);
    std::shuffle(out.begin(), out.end(), rng);
    out.resize(static_cast<std::size_t>(m));
    return out;
  }
  std::unordered_set<std::uint64_t> seen;
  while (static_cast<std::int64_t>(out.size()) < m) {
    NodeId u = uniform_node(rng, n), v = uniform_node(rng, n);
    if (u == v || !seen.insert(pair_key(u, v)).second) continue;
    out.emplace_back(std::min(u, v), std::max(u, v));
  }
  return out;
}

std::vector<std::pair<NodeId, NodeId>> grid_pairs(NodeId n, std::int64_t m, Rng& rng) {
  std::vector<std::pair<NodeId, NodeId>> out;
  const auto width = static_cast<NodeId>(std::ceil(std::sqrt(static_cast<double>(n))));
  for (NodeId x = 0; x < n; ++x) {
    if ((x + 1) % width != 0 && x + 1 < n) out.emplace_back(x, x + 1);
    if (x + width < n) out.emplace_back(x, x + width);
  }
  if (static_cast<std::int64_t>(out.size()) > m) {
    std::shuffle(out.begin(), out.end(), rng);
    out.resize(static_cast<std::size_t>(m));
  }
  return out;
}

// Preferential attachment: each new node links to about m/n earlier nodes
// chosen proportionally to degree; remaining edges are uniform pairs.
std::vector<std::pair<NodeId, NodeId>> power_law_pairs(NodeId n, std::int64_t m, Rng& rng) {
  std::vector<std::pair<NodeId, NodeId>> out;
  std::unordered_set<std::uint64_t> seen;
  std::vector<NodeId> ends;
  const std::int64_t per = std::max<std::int64_t>(1, m / std::max<NodeId>(n, 1));
  for (NodeId v = 1; v < n && static_cast<std::int64_t>(out.size()) < m; ++v) {
    const std::int64_t want = std::min<std::int64_t>(per, v);
    std::int64_t got = 0;
    for (int attempt = 0; got < want && attempt < 8 * want; ++attempt) {
      NodeId u = ends.empty() ? uniform_node(rng, v)
                              : ends[std::uniform_int_distribution<std::size_t>(0, ends.size() - 1)(rng)];
      if (u == v || !seen.insert(pair_key(u, v)).second) continue;
      out.emplace_back(std::min(u, v), std::max(u, v));
      ends.push_back(u);
      ends.push_back(v);
      ++got;
      if (static_cast<std::int64_t>(out.size()) == m) break;
    }
  }
  while (static_cast<std::int64_t>(out.size()) < m) {
    NodeId u = uniform_node(rng, n), v = uniform_node(rng, n);
    if (u == v || !seen.insert(pair_key(u, v)).second) continue;
    out.emplace_back(std::min(u, v), std::max(u, v));
  }
  return out;
}

}  // namespace

Schedule generate_instance(const GenerateOptions& opts) {
  if (opts.n < 0) throw ConfigError("n must be non-negative");
  if (opts.max_weight < 1) throw ConfigError("max weight must be at least 1");
  const std::int64_t total = static_cast<std::int64_t>(opts.n) * (opts.n - 1) / 2;
  if (opts.m < 0 || opts.m > total)
    throw ConfigError("m=" + std::to_string(opts.m) + " exceeds n(n-1)/2=" + std::to_string(total));
  if (opts.deletion_fraction < 0 || opts.deletion_fraction > 1)
    throw ConfigError("deletion fraction must lie in [0, 1]");
  Rng rng(opts.seed);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  switch (opts.model) {
    case GraphModel::ErdosRenyi: pairs = er_pairs(opts.n, opts.m, rng); break;
    case GraphModel::Grid: pairs = grid_pairs(opts.n, opts.m, rng); break;
    case GraphModel::PowerLaw: pairs = power_law_pairs(opts.n, opts.m, rng); break;
  }
  DynamicGraph g(opts.n, opts.max_weight);
  std::uniform_int_distribution<Weight> wdist(1, opts.max_weight);
  for (auto [u, v] : pairs) g.add_edge(u, v, wdist(rng));
  return make_schedule(std::move(g), opts.deletion_fraction, opts.increase_rate,
                       opts.queries_per_update, rng());
}

Schedule make_schedule(DynamicGraph g, double deletion_fraction, double increase_rate,
                       int queries_per_update, std::uint64_t seed) {
  Schedule s;
  s.seed = seed;
  Rng rng(seed);
  std::vector<Edge> live = g.edges();
  std::shuffle(live.begin(), live.end(), rng);
  const auto deletions =
      static_cast<std::size_t>(std::floor(deletion_fraction * static_cast<double>(live.size()) + 1e-9));
  const Weight W = g.max_weight();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto probes = [&] {
    for (int q = 0; q < queries_per_update && g.node_count() > 0; ++q)
      s.events.emplace_back(QueryEvent{uniform_node(rng, g.node_count()), uniform_node(rng, g.node_count())});
  };
  // live[0..deletions) are deleted in order; the rest survive.
  for (std::size_t d = 0; d < deletions; ++d) {
    double budget = increase_rate;
    while (budget > 0) {
      const bool take = budget >= 1 || unit(rng) < budget;
      budget -= 1;
      if (!take) continue;
      std::size_t idx = std::uniform_int_distribution<std::size_t>(d, live.size() - 1)(rng);
      Edge& e = live[idx];
      if (e.w >= W) continue;
      e.w = std::uniform_int_distribution<Weight>(e.w + 1, W)(rng);
      s.events.emplace_back(UpdateEvent::increase(e.u, e.v, e.w));
      probes();
    }
    s.events.emplace_back(UpdateEvent::deletion(live[d].u, live[d].v));
    probes();
  }
  s.initial = std::move(g);
  return s;
}

DynamicGraph path_graph(NodeId n, Weight w) {
  DynamicGraph g(n, std::max<Weight>(w, 1));
  for (NodeId v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, w);
  return g;
}

DynamicGraph grid_graph(NodeId rows, NodeId cols, Weight w) {
  DynamicGraph g(rows * cols, std::max<Weight>(w, 1));
  for (NodeId r = 0; r < rows; ++r)
    for (NodeId c = 0; c < cols; ++c) {
      NodeId x = r * cols + c;
      if (c + 1 < cols) g.add_edge(x, x + 1, w);
      if (r + 1 < rows) g.add_edge(x, x + cols, w);
    }
  return g;
}

std::string to_text(const Schedule& s) {
  std::ostringstream out;
  write_graph(out, s.initial);
  write_updates(out, s.events);
  return out.str();
}

std::vector<Weight> bellman_ford(const DynamicGraph& g, NodeId source) {
  g.check_node(source);
  std::vector<Weight> d(static_cast<std::size_t>(g.node_count()), kInf);
  d[static_cast<std::size_t>(source)] = 0;
  const std::vector<Edge> edges = g.edges();
  for (NodeId round = 1; round < g.node_count(); ++round) {
    bool changed = false;
    for (const Edge& e : edges) {
      auto& du = d[static_cast<std::size_t>(e.u)];
      auto& dv = d[static_cast<std::size_t>(e.v)];
      if (du != kInf && du + e.w < dv) dv = du + e.w, changed = true;
      if (dv != kInf && dv + e.w < du) du = dv + e.w, changed = true;
    }
    if (!changed) break;
  }
  return d;
}

std::vector<std::vector<Weight>> all_pairs(const DynamicGraph& g, Execution ex) {
  std::vector<std::vector<Weight>> out(static_cast<std::size_t>(g.node_count()));
  for_each_index(ex, out.size(), [&](std::size_t s) {
    const NodeId src = static_cast<NodeId>(s);
    out[s] = dijkstra_all(g, std::span<const NodeId>(&src, 1));
  });
  return out;
}

bool ValidationReport::ok() const {
  if (underestimates != 0 || bound_violations != 0) return false;
  for (const auto& [name, count] : invariant_failures)
    if (count != 0) return false;
  return true;
}

double ValidationReport::overall_max_stretch() const {
  double best = 0;
  for (double s : max_stretch) best = std::max(best, s);
  return best;
}

namespace {

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  out << "algorithm=" << algorithm << '\n'
      << "n=" << n << '\n'
      << "m=" << m << '\n'
      << "updates=" << updates << '\n'
      << "queries=" << queries << '\n'
      << "checked_states=" << checked_states << '\n'
      << "bound=" << bound.to_string() << '\n'
      << "max_stretch=" << fixed6(overall_max_stretch()) << '\n'
      << "underestimates=" << underestimates << '\n'
      << "bound_violations=" << bound_violations << '\n';
  for (const auto& [name, count] : invariant_failures) out << "invariant." << name << '=' << count << '\n';
  for (const auto& [name, count] : work) out << "work." << name << '=' << count << '\n';
  for (std::size_t i = 0; i < violations.size(); ++i) {
    const Violation& v = violations[i];
    out << "violation." << i << "=update:" << v.update << " kind:" << v.kind << " u:" << v.u
        << " v:" << v.v << " estimate:" << v.estimate.to_string()
        << " dist:" << (v.dist == kInf ? std::string("inf") : std::to_string(v.dist)) << '\n';
  }
  out << "per_state_max_stretch=";
  for (std::size_t i = 0; i < max_stretch.size(); ++i) out << (i ? "," : "") << fixed6(max_stretch[i]);
  out << '\n';
  if (!answers.empty()) {
    out << "answers=";
    for (std::size_t i = 0; i < answers.size(); ++i) out << (i ? "," : "") << answers[i].to_string();
    out << '\n';
  }
  if (wall_ms) out << "wall_ms=" << fixed6(*wall_ms) << '\n';
  out << "status=" << (ok() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

namespace {

constexpr std::size_t kMaxRecorded = 16;

class Checker {
 public:
  Checker(ValidationReport& r, Rational bound) : r_(r), bound_(std::move(bound)) {}

  void begin_state() { state_max_ = 1.0; }
  void end_state() {
    r_.max_stretch.push_back(state_max_);
    ++r_.checked_states;
  }

  void check(std::size_t update, NodeId u, NodeId v, const Rational& est, Weight dist) {
    if (dist == kInf) {
      if (!est.is_infinite()) record(r_.underestimates, update, "underestimate", u, v, est, dist);
      return;
    }
    const Rational d = Rational::from_weight(dist);
    if (est < d) {
      record(r_.underestimates, update, "underestimate", u, v, est, dist);
      return;
    }
    if (est > bound_ * d) {
      record(r_.bound_violations, update, "stretch", u, v, est, dist);
      return;
    }
    if (dist > 0) state_max_ = std::max(state_max_, (est / d).to_double());
  }

  void invariant(const std::string& name, std::size_t update, NodeId u = kNoNode, NodeId v = kNoNode) {
    record(r_.invariant_failures[name], update, name, u, v, Rational(0), kInf);
  }

 private:
  void record(std::size_t& counter, std::size_t update, const std::string& kind, NodeId u, NodeId v,
              const Rational& est, Weight dist) {
    ++counter;
    if (r_.violations.size() < kMaxRecorded) r_.violations.push_back({update, kind, u, v, est, dist});
  }

  ValidationReport& r_;
  Rational bound_;
  double state_max_ = 1.0;
};

Rational pow_rational(const Rational& x, int k) {
  Rational out(1);
  for (int i = 0; i < k; ++i) out = out * x;
  return out;
}

}  // namespace

ValidationReport run_with_oracle(const Schedule& schedule, const AlgorithmConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  DynamicGraph g = schedule.initial;
  const NodeId n = g.node_count();
  ValidationReport report;
  report.n = n;
  report.m = g.edge_count();
  if (config.oracle_stride < 1) throw ConfigError("oracle stride must be at least 1");
  if (config.algorithm != Algorithm::Apsp) g.check_node(config.source);

  std::unique_ptr<EsTree> es;
  std::unique_ptr<FullRangeSssp> full;
  std::unique_ptr<ApspOracle> apsp;
  const std::vector<NodeId> sources{config.source};
  switch (config.algorithm) {
    case Algorithm::ExactEs:
      report.algorithm = "es-tree";
      report.bound = Rational(1);
      es = std::make_unique<EsTree>(g, sources, std::max<Weight>(1, static_cast<Weight>(n) * g.max_weight()));
      break;
    case Algorithm::FullRange: {
      report.algorithm = "full-range";
      report.bound = Rational(1) + config.epsilon;
      StackOptions so;
      so.p = config.p;
      so.q = config.q;
      so.c = config.c;
      so.seed = config.seed;
      so.execution = config.execution;
      so.monitor = config.check_invariants;
      full = std::make_unique<FullRangeSssp>(g, sources, config.epsilon, so);
      report.invariant_failures["full_range.heap_sync"] = 0;
      report.invariant_failures["full_range.query_reads"] = 0;
      report.invariant_failures["monotone.observations"] = 0;
      break;
    }
    case Algorithm::Apsp: {
      report.algorithm = "apsp";
      report.bound = pow_rational(Rational(2) + config.epsilon, config.k) - Rational(1);
      ApspOptions ao;
      ao.k = config.k;
      ao.epsilon = config.epsilon;
      ao.seed = config.seed;
      ao.c = config.c;
      ao.stack.p = config.p;
      ao.stack.q = config.q;
      ao.execution = config.execution;
      apsp = std::make_unique<ApspOracle>(g, ao);
      report.invariant_failures["apsp.expansions"] = 0;
      report.invariant_failures["apsp.heap_sync"] = 0;
      report.invariant_failures["apsp.journal_replay"] = 0;
      break;
    }
  }
  if (es) report.invariant_failures["es.parent_tight"] = 0;
  Checker checker(report, report.bound);
  int expansion_cap = 1;
  for (int i = 0; i < config.k; ++i) expansion_cap *= config.k;

  auto sssp_estimate = [&](NodeId v) -> Rational {
    if (es) return Rational::from_weight(es->level(v));
    const std::uint64_t before = full->heap_reads();
    Rational e = full->query(v);
    if (config.check_invariants && full->heap_reads() != before + 1) checker.invariant("full_range.query_reads", 0, v);
    return e;
  };

  auto check_state = [&](std::size_t idx) {
    const bool fault = config.fault_at && *config.fault_at == idx;
    bool injected = false;
    auto corrupt = [&](Rational est, Weight dist) {
      if (fault && !injected && dist != kInf && dist > 0) {
        injected = true;
        return Rational::from_weight(dist) - Rational(1, 2);
      }
      return est;
    };
    checker.begin_state();
    if (apsp) {
      auto dist = all_pairs(g, config.execution);
      if (config.all_pairs_probes) {
        for (NodeId u = 0; u < n; ++u)
          for (NodeId v = 0; v < n; ++v) {
            ApspAnswer a = apsp->query(u, v);
            Weight d = dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
            if (a.expansions > expansion_cap) checker.invariant("apsp.expansions", idx, u, v);
            checker.check(idx, u, v, corrupt(a.estimate, d), d);
          }
      }
      if (config.check_invariants) {
        if (!apsp->heaps_match_balls()) checker.invariant("apsp.heap_sync", idx);
        if (!apsp->heaps_match_replay()) checker.invariant("apsp.journal_replay", idx);
      }
    } else {
      auto dist = dijkstra_all(g, sources);
      for (NodeId v = 0; v < n; ++v) {
        Weight d = dist[static_cast<std::size_t>(v)];
        checker.check(idx, config.source, v, corrupt(sssp_estimate(v), d), d);
      }
      if (config.check_invariants && full && !full->check_heaps()) checker.invariant("full_range.heap_sync", idx);
      if (config.check_invariants && es) {
        for (NodeId v = 0; v < n; ++v) {
          NodeId par = es->parent(v);
          if (v == config.source || par == kNoNode) continue;
          auto w = g.weight(par, v);
          if (!w || es->level(par) + *w != es->level(v)) checker.invariant("es.parent_tight", idx, par, v);
        }
      }
    }
    checker.end_state();
  };

  if (config.oracle) check_state(0);
  const std::size_t total_updates = schedule.update_count();
  std::size_t idx = 0;
  for (const StreamItem& item : schedule.events) {
    if (const auto* ev = std::get_if<UpdateEvent>(&item)) {
      ChangeRecord c = g.apply_update(*ev);
      ++idx;
      if (es) {
        std::vector<LevelChange> ch;
        es->update(c, ch);
      } else if (full) {
        std::vector<EstimateChange> ch;
        full->update(c, ch);
      } else {
        apsp->update(c);
      }
      const bool due = idx % static_cast<std::size_t>(config.oracle_stride) == 0 || idx == total_updates ||
                       (config.fault_at && *config.fault_at == idx);
      if (config.oracle && due) check_state(idx);
      continue;
    }
    const auto& q = std::get<QueryEvent>(item);
    g.check_node(q.u);
    g.check_node(q.v);
    ++report.queries;
    Rational ans;
    if (apsp) {
      ApspAnswer a = apsp->query(q.u, q.v);
      if (a.expansions > expansion_cap) checker.invariant("apsp.expansions", idx, q.u, q.v);
      ans = a.estimate;
    } else {
      if (q.u != config.source)
        throw ConfigError("query source " + std::to_string(q.u) + " differs from the SSSP source");
      ans = sssp_estimate(q.v);
    }
    report.answers.push_back(ans);
    if (config.oracle) {
      auto d = dijkstra_all(g, std::span<const NodeId>(&q.u, 1));
      checker.check(idx, q.u, q.v, ans, d[static_cast<std::size_t>(q.v)]);
    }
  }
  report.updates = idx;
  if (!apsp)
    for (NodeId v = 0; v < n; ++v)
      report.final_estimates.push_back(es ? Rational::from_weight(es->level(v)) : full->estimate(v));
  if (full) {
    report.invariant_failures["monotone.observations"] += full->monitor_violations().size();
    report.work["full_range"] = full->work();
    report.work["heap_reads"] = full->heap_reads();
  } else if (es) {
    report.work["es_tree"] = es->work();
  } else {
    report.work["apsp"] = apsp->work();
  }
  if (config.timing)
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

int radius_increase_cap(const BallSystem& balls) {
  const BigRational q = 1 + to_big(balls.params().epsilon);
  const BigRational depth(balls.params().depth);
  int t = 0;
  BigRational pw(1);
  while (pw < depth) {
    pw *= q;
    ++t;
  }
  return t + 2;
}

BallCheckCounts check_ball_properties(const BallSystem& balls, const std::vector<std::vector<Weight>>& dist,
                                      bool check_containment) {
  BallCheckCounts out;
  const NodeId n = balls.node_count();
  const int p = balls.params().p;
  const Rational alpha = balls.alpha(), beta = balls.beta();
  const BigRational eps = to_big(balls.params().epsilon);
  const BigRational a = (1 + eps) * to_big(alpha);
  const BigRational b = (1 + eps) * to_big(beta) + 1;
  const BigRational depth(balls.params().depth);
  const int cap = radius_increase_cap(balls);
  const auto& sets = balls.assignment().sets;
  for (NodeId u = 0; u < n; ++u) {
    const auto& du = dist[static_cast<std::size_t>(u)];
    const int i = balls.priority(u);
    Weight to_next = kInf;
    for (NodeId x : sets[static_cast<std::size_t>(i) + 1]) to_next = std::min(to_next, du[static_cast<std::size_t>(x)]);
    ++out.checks;
    if (balls.radius_increases(u) > cap) ++out.radius;
    for (const auto& [v, est] : balls.members(u)) {
      ++out.checks;
      const Weight d = du[static_cast<std::size_t>(v)];
      if (d == kInf || est < Rational(d) || est > alpha * Rational(d) + beta) ++out.sandwich;
      if (check_containment && d >= to_next) ++out.containment;
    }
    for (NodeId v = 0; v < n; ++v) {
      const Weight d = du[static_cast<std::size_t>(v)];
      if (d == kInf || balls.in_ball(u, v)) continue;
      if (witness_bound(a, b, BigRational(d), p - 1 - i) > depth) continue;
      ++out.checks;
      if (structural_witness(balls, u, v, dist).kind == Witness::Kind::None) ++out.witness;
    }
  }
  return out;
}

HopsetCheckReport static_hopset_check(const DynamicGraph& g, int p, Weight delta, const Rational& epsilon,
                                      std::uint64_t seed, bool force_empty_f, double c) {
  if (g.node_count() > 100) throw ConfigError("static hop-set check is limited to n <= 100");
  if (p < 2) throw ConfigError("p must be at least 2");
  if (delta < 1) throw ConfigError("delta must be positive");
  HopsetCheckReport rep;
  rep.p = p;
  rep.delta = delta;
  rep.epsilon = epsilon;
  const NodeId n = g.node_count();
  const auto N = static_cast<std::size_t>(n);
  auto dist = all_pairs(g);

  // F: ball edges with emulator weight dist_G(u,v).
  std::vector<std::vector<std::pair<NodeId, Weight>>> adj(N);
  for (const Edge& e : g.edges()) {
    adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.w);
    adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.w);
  }
  if (!force_empty_f && n > 0) {
    PriorityAssignment pa = sample_priorities(g, p, c, seed, false);
    std::vector<std::vector<Weight>> to_set(static_cast<std::size_t>(p) + 1);
    for (int i = 0; i <= p; ++i) {
      const auto& set = pa.sets[static_cast<std::size_t>(i)];
      to_set[static_cast<std::size_t>(i)] =
          set.empty() ? std::vector<Weight>(N, kInf) : dijkstra_all(g, std::span<const NodeId>(set));
    }
    std::unordered_set<std::uint64_t> added;
    for (NodeId u = 0; u < n; ++u) {
      const int i = pa.priority[static_cast<std::size_t>(u)];
      const Weight limit = to_set[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(u)];
      for (NodeId v = 0; v < n; ++v) {
        Weight d = dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
        if (v == u || d == kInf || d >= limit) continue;
        if (!added.insert(pair_key(u, v)).second) continue;
        adj[static_cast<std::size_t>(u)].emplace_back(v, d);
        adj[static_cast<std::size_t>(v)].emplace_back(u, d);
      }
    }
    rep.f_edges = added.size();
  }

  // Additive term 2(2+2/eps)^(p-2) Delta; covered band: additive <= eps * dist.
  Rational additive = Rational(2) * Rational::from_weight(delta);
  for (int i = 0; i < p - 2; ++i) additive = additive * (Rational(2) + Rational(2) / epsilon);
  rep.band_min = additive / epsilon;
  const Rational tight = Rational(1) + Rational(2) * epsilon;

  for (NodeId s = 0; s < n; ++s) {
    const auto& exact = dist[static_cast<std::size_t>(s)];
    std::vector<Weight> cur(N, kInf), next;
    cur[static_cast<std::size_t>(s)] = 0;
    std::vector<int> hops(N, -1);
    std::vector<int> budget(N, 0);
    std::vector<char> additive_ok(N, 0);
    std::size_t pending = 0;
    for (NodeId v = 0; v < n; ++v) {
      Weight d = exact[static_cast<std::size_t>(v)];
      if (v == s || d == kInf) continue;
      ++pending;
      budget[static_cast<std::size_t>(v)] = p * static_cast<int>((d + delta - 1) / delta);
    }
    for (int h = 1; pending > 0 && h < std::max<NodeId>(n, 2); ++h) {
      next = cur;
      for (std::size_t x = 0; x < N; ++x) {
        if (cur[x] == kInf) continue;
        for (auto [y, w] : adj[x]) {
          auto& t = next[static_cast<std::size_t>(y)];
          t = std::min(t, cur[x] + w);
        }
      }
      cur.swap(next);
      for (NodeId v = 0; v < n; ++v) {
        const auto vi = static_cast<std::size_t>(v);
        Weight d = exact[vi];
        if (v == s || d == kInf || cur[vi] == kInf) continue;
        const Rational got = Rational::from_weight(cur[vi]);
        const Rational dd = Rational::from_weight(d);
        if (h <= budget[vi] && got <= (Rational(1) + epsilon) * dd + additive) additive_ok[vi] = 1;
        if (hops[vi] < 0 && got <= tight * dd) {
          hops[vi] = h;
          --pending;
        }
      }
    }
    for (NodeId v = s + 1; v < n; ++v) {
      const auto vi = static_cast<std::size_t>(v);
      Weight d = exact[vi];
      if (d == kInf) continue;
      ++rep.pairs;
      rep.per_pair.push_back({s, v, d, hops[vi]});
      if (!additive_ok[vi]) ++rep.additive_violations;
      if (Rational::from_weight(d) >= rep.band_min) {
        ++rep.band_pairs;
        if (hops[vi] < 0 || hops[vi] > budget[vi]) ++rep.band_violations;
      }
    }
  }
  return rep;
}

}  // namespace decrsp
