#include "decrsp/priority_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace decrsp {

bool PriorityAssignment::in_set(NodeId v, int i) const {
  const auto& s = sets[static_cast<std::size_t>(i)];
  return std::binary_search(s.begin(), s.end(), v);
}

double sampling_probability(std::size_t n, std::size_t m, int i, int p, double c) {
  if (i <= 0) return 1.0;
  if (i >= p || m == 0 || n < 2) return 0.0;
  double prob = c * std::log(static_cast<double>(n)) /
                std::pow(static_cast<double>(m), static_cast<double>(i) / p);
  return std::min(1.0, prob);
}

PriorityAssignment sample_priorities(const DynamicGraph& g, int p, double c, std::uint64_t seed,
                                     bool strict) {
  const NodeId n = g.node_count();
  if (p < 2) throw ConfigError("priority count p must be at least 2");
  if (strict && (n < 2 || p > std::log2(static_cast<double>(n))))
    throw ConfigError("priority count p=" + std::to_string(p) + " exceeds log2 n");
  if (!(c > 0)) throw ConfigError("sampling constant c must be positive");

  PriorityAssignment a;
  a.p = p;
  a.seed = seed;
  a.c = c;
  a.sets.resize(static_cast<std::size_t>(p) + 1);
  a.sampled_edges.resize(static_cast<std::size_t>(p) + 1);
  a.priority.assign(static_cast<std::size_t>(n), 0);

  auto edges = g.edges();
  a.sampled_edges[0] = edges;
  a.sets[0].resize(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) a.sets[0][v] = v;

  std::mt19937_64 rng(seed);
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  for (int i = 1; i < p; ++i) {
    double prob = sampling_probability(static_cast<std::size_t>(n), edges.size(), i, p, c);
    std::vector<std::uint8_t> member(static_cast<std::size_t>(n), 0);
    for (const Edge& e : edges) {
      double x = static_cast<double>(rng() >> 11) * kScale;
      if (x < prob) {
        a.sampled_edges[i].push_back(e);
        member[e.u] = member[e.v] = 1;
      }
    }
    for (NodeId v = 0; v < n; ++v)
      if (member[v]) {
        a.sets[i].push_back(v);
        a.priority[v] = i;
      }
  }
  return a;
}

double hitting_probability(double s, double l, double t, double a) {
  if (!(s > 0) || !(l > 0) || !(t > 0) || !(a > 0))
    throw std::invalid_argument("hitting_probability arguments must be positive");
  if (std::isinf(s)) return 0.0;
  return std::min(1.0, a * std::log(l * t) / s);
}

}  // namespace decrsp
