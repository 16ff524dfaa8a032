#include "decrsp/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace decrsp {

DynamicGraph::DynamicGraph(NodeId n, Weight max_weight)
    : n_(n), max_weight_(max_weight), adj_(static_cast<std::size_t>(n)),
      dead_(static_cast<std::size_t>(n), 0) {
  if (n < 0) throw GraphError("negative node count");
  if (max_weight < 1) throw GraphError("max weight must be at least 1");
}

std::uint64_t DynamicGraph::key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

void DynamicGraph::check_node(NodeId u) const {
  if (u < 0 || u >= n_) throw GraphError("unknown node id " + std::to_string(u));
}

void DynamicGraph::add_edge(NodeId u, NodeId v, Weight w) {
  check_node(u);
  check_node(v);
  if (u == v) throw GraphError("self-loop at node " + std::to_string(u));
  if (w < 1 || w > max_weight_)
    throw GraphError("weight " + std::to_string(w) + " outside [1, " +
                     std::to_string(max_weight_) + "]");
  auto [it, fresh] = index_.try_emplace(key(u, v), Slot{});
  if (!fresh)
    throw GraphError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  NodeId a = std::min(u, v), b = std::max(u, v);
  it->second.at_u = static_cast<std::uint32_t>(adj_[a].size());
  it->second.at_v = static_cast<std::uint32_t>(adj_[b].size());
  adj_[a].push_back({b, w, true});
  adj_[b].push_back({a, w, true});
  ++edge_count_;
}

std::optional<Weight> DynamicGraph::weight(NodeId u, NodeId v) const {
  auto it = index_.find(key(u, v));
  if (it == index_.end()) return std::nullopt;
  return adj_[std::min(u, v)][it->second.at_u].w;
}

std::size_t DynamicGraph::degree(NodeId u) const {
  return adj_[u].size() - dead_[u];
}

ChangeRecord DynamicGraph::apply_update(const UpdateEvent& e) {
  check_node(e.u);
  check_node(e.v);
  auto it = index_.find(key(e.u, e.v));
  if (it == index_.end())
    throw GraphError("no edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
  NodeId a = std::min(e.u, e.v), b = std::max(e.u, e.v);
  Arc& fa = adj_[a][it->second.at_u];
  Arc& fb = adj_[b][it->second.at_v];
  ChangeRecord rec{e.u, e.v, fa.w, kInf, 0};
  if (e.kind == UpdateEvent::Kind::IncreaseWeight) {
    if (e.new_weight <= fa.w)
      throw GraphError("weight of (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") must increase beyond " + std::to_string(fa.w));
    if (e.new_weight > max_weight_)
      throw GraphError("weight " + std::to_string(e.new_weight) + " exceeds W");
    fa.w = e.new_weight;
    fb.w = e.new_weight;
    rec.new_weight = e.new_weight;
  } else {
    fa.alive = false;
    fb.alive = false;
    ++dead_[a];
    ++dead_[b];
    index_.erase(it);
    --edge_count_;
    maybe_compact(a);
    maybe_compact(b);
  }
  rec.version = ++version_;
  return rec;
}

void DynamicGraph::maybe_compact(NodeId u) {
  auto& list = adj_[u];
  if (dead_[u] * 2 <= list.size()) return;
  std::size_t out = 0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!list[i].alive) continue;
    list[out] = list[i];
    Slot& s = index_.at(key(u, list[i].to));
    (u < list[i].to ? s.at_u : s.at_v) = static_cast<std::uint32_t>(out);
    ++out;
  }
  list.resize(out);
  dead_[u] = 0;
}

std::vector<Edge> DynamicGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < n_; ++u)
    for (const Arc& a : adj_[u])
      if (a.alive && u < a.to) out.push_back({u, a.to, a.w});
  std::sort(out.begin(), out.end(),
            [](const Edge& x, const Edge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
  return out;
}

DistanceList dijkstra_bounded(const DynamicGraph& g, std::span<const NodeId> sources,
                              Weight depth_bound) {
  using Item = std::pair<Weight, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  std::unordered_map<NodeId, Weight> tentative;
  DistanceList settled;
  if (depth_bound < 0) return settled;
  for (NodeId s : sources) {
    g.check_node(s);
    if (tentative.emplace(s, 0).second) pq.emplace(0, s);
  }
  std::unordered_map<NodeId, bool> done;
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (tentative[u] != d || done[u]) continue;
    done[u] = true;
    settled.emplace_back(u, d);
    g.for_each_neighbor(u, [&](NodeId v, Weight w) {
      Weight nd = sat_add(d, w);
      if (nd > depth_bound) return;
      auto [it, fresh] = tentative.try_emplace(v, nd);
      if (fresh || nd < it->second) {
        it->second = nd;
        pq.emplace(nd, v);
      }
    });
  }
  std::sort(settled.begin(), settled.end());
  return settled;
}

DistanceList dijkstra_bounded(const DynamicGraph& g, NodeId source, Weight depth_bound) {
  return dijkstra_bounded(g, std::span<const NodeId>(&source, 1), depth_bound);
}

std::vector<Weight> dijkstra_all(const DynamicGraph& g, std::span<const NodeId> sources) {
  using Item = std::pair<Weight, NodeId>;
  std::vector<Weight> dist(static_cast<std::size_t>(g.node_count()), kInf);
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (NodeId s : sources) {
    g.check_node(s);
    dist[s] = 0;
    pq.emplace(0, s);
  }
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[u]) continue;
    g.for_each_neighbor(u, [&](NodeId v, Weight w) {
      Weight nd = sat_add(d, w);
      if (nd < dist[v]) {
        dist[v] = nd;
        pq.emplace(nd, v);
      }
    });
  }
  return dist;
}

InducedSubgraph::InducedSubgraph(const DynamicGraph& parent, std::vector<NodeId> nodes)
    : nodes_(std::move(nodes)), snapshot_version_(parent.version()) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  local_ = DynamicGraph(static_cast<NodeId>(nodes_.size()), parent.max_weight());
  local_of_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    parent.check_node(nodes_[i]);
    local_of_.emplace(nodes_[i], static_cast<NodeId>(i));
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    parent.for_each_neighbor(nodes_[i], [&](NodeId v, Weight w) {
      if (nodes_[i] >= v) return;
      auto it = local_of_.find(v);
      if (it != local_of_.end()) local_.add_edge(static_cast<NodeId>(i), it->second, w);
    });
  }
}

std::optional<NodeId> InducedSubgraph::to_local(NodeId parent_id) const {
  auto it = local_of_.find(parent_id);
  if (it == local_of_.end()) return std::nullopt;
  return it->second;
}

std::optional<ChangeRecord> InducedSubgraph::forward(const ChangeRecord& c) {
  auto a = to_local(c.u);
  auto b = to_local(c.v);
  if (!a || !b) return std::nullopt;
  UpdateEvent e = c.deleted() ? UpdateEvent::deletion(*a, *b)
                              : UpdateEvent::increase(*a, *b, c.new_weight);
  return local_.apply_update(e);
}

namespace {

// Splits a line into tokens, dropping a trailing `#` comment.
std::vector<std::string> tokens_of(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream ss(body);
  std::vector<std::string> out;
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

std::int64_t to_int(const std::string& s, std::size_t line) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "expected integer, got '" + s + "'");
  }
  if (pos != s.size()) throw ParseError(line, "expected integer, got '" + s + "'");
  return v;
}

}  // namespace

DynamicGraph load_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++lineno;
    header = tokens_of(line);
  }
  if (header.size() != 3) throw ParseError(lineno, "expected header 'n m W'");
  std::int64_t n = to_int(header[0], lineno), m = to_int(header[1], lineno),
               W = to_int(header[2], lineno);
  if (n < 0 || m < 0 || W < 1) throw ParseError(lineno, "invalid header values");
  DynamicGraph g(static_cast<NodeId>(n), W);
  std::int64_t seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = tokens_of(line);
    if (t.empty()) continue;
    if (t.size() != 3) throw ParseError(lineno, "expected 'u v w'");
    std::int64_t u = to_int(t[0], lineno), v = to_int(t[1], lineno), w = to_int(t[2], lineno);
    if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError(lineno, "node id out of range");
    if (u == v) throw ParseError(lineno, "self-loop");
    if (w < 1 || w > W) throw ParseError(lineno, "weight " + std::to_string(w) + " exceeds W or is below 1");
    try {
      g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), w);
    } catch (const GraphError& e) {
      throw ParseError(lineno, e.what());
    }
    ++seen;
  }
  if (seen != m)
    throw ParseError(lineno, "header declares " + std::to_string(m) + " edges, found " +
                                 std::to_string(seen));
  return g;
}

std::vector<StreamItem> parse_updates(std::istream& in, const DynamicGraph& initial,
                                      bool allow_queries) {
  std::unordered_map<std::uint64_t, Weight> weights;
  auto key = [](std::int64_t u, std::int64_t v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
  };
  for (const Edge& e : initial.edges()) weights[key(e.u, e.v)] = e.w;
  const std::int64_t n = initial.node_count();
  std::vector<StreamItem> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = tokens_of(line);
    if (t.empty()) continue;
    const std::string& op = t[0];
    auto node = [&](const std::string& s) {
      std::int64_t x = to_int(s, lineno);
      if (x < 0 || x >= n) throw ParseError(lineno, "node id out of range");
      return static_cast<NodeId>(x);
    };
    if (op == "Q") {
      if (!allow_queries) throw ParseError(lineno, "queries not allowed in this stream");
      if (t.size() != 3) throw ParseError(lineno, "expected 'Q u v'");
      out.emplace_back(QueryEvent{node(t[1]), node(t[2])});
      continue;
    }
    if (op != "D" && op != "I") throw ParseError(lineno, "unknown record '" + op + "'");
    if (t.size() != (op == "D" ? 3u : 4u)) throw ParseError(lineno, "wrong field count");
    NodeId u = node(t[1]), v = node(t[2]);
    auto it = weights.find(key(u, v));
    if (it == weights.end()) throw ParseError(lineno, "edge does not exist");
    if (op == "D") {
      weights.erase(it);
      out.emplace_back(UpdateEvent::deletion(u, v));
      continue;
    }
    Weight w = 0;
    if (t[3][0] == '+')
      w = sat_add(it->second, to_int(t[3].substr(1), lineno));
    else
      w = to_int(t[3], lineno);
    if (w <= it->second) throw ParseError(lineno, "weight must strictly increase");
    if (w > initial.max_weight()) throw ParseError(lineno, "weight exceeds W");
    it->second = w;
    out.emplace_back(UpdateEvent::increase(u, v, w));
  }
  return out;
}

void write_graph(std::ostream& out, const DynamicGraph& g) {
  auto es = g.edges();
  out << g.node_count() << ' ' << es.size() << ' ' << g.max_weight() << '\n';
  for (const Edge& e : es) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
}

void write_updates(std::ostream& out, std::span<const StreamItem> items) {
  for (const StreamItem& it : items) {
    if (const auto* q = std::get_if<QueryEvent>(&it)) {
      out << "Q " << q->u << ' ' << q->v << '\n';
      continue;
    }
    const auto& e = std::get<UpdateEvent>(it);
    if (e.kind == UpdateEvent::Kind::Delete)
      out << "D " << e.u << ' ' << e.v << '\n';
    else
      out << "I " << e.u << ' ' << e.v << ' ' << e.new_weight << '\n';
  }
}

}  // namespace decrsp
