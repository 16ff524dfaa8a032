#pragma once

#include <cstdint>
#include <vector>

#include "decrsp/graph.hpp"

namespace decrsp {

struct PriorityAssignment {
  int p = 0;
  std::uint64_t seed = 0;
  double c = 0;
  // sets[i] sorted; sets[0] = V, sets[p] = {}.
  std::vector<std::vector<NodeId>> sets;
  std::vector<std::vector<Edge>> sampled_edges;  // F_0..F_p
  std::vector<int> priority;

  bool in_set(NodeId v, int i) const;
};

// Edge-sampled priorities: for 1 <= i <= p-1 every edge joins F_i independently
// with probability min(1, c ln n / m^{i/p}). With `strict`, requires
// 2 <= p <= log2 n.
PriorityAssignment sample_priorities(const DynamicGraph& g, int p, double c, std::uint64_t seed,
                                     bool strict = true);

double sampling_probability(std::size_t n, std::size_t m, int i, int p, double c);

// Sampling rate min(1, a ln(l t) / s). Picking every element of a universe of
// size t at this rate hits each of l sets of size >= s with probability at
// least 1 - 1/t^a.
double hitting_probability(double s, double l, double t, double a);

}  // namespace decrsp
