#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "decrsp/approx_balls.hpp"
#include "decrsp/graph.hpp"
#include "decrsp/layered_sssp.hpp"
#include "decrsp/parallel.hpp"

namespace decrsp {

enum class GraphModel { ErdosRenyi, Grid, PowerLaw };
GraphModel parse_model(const std::string& name);
std::string to_string(GraphModel m);

struct GenerateOptions {
  NodeId n = 0;
  std::int64_t m = 0;  // grid: upper bound on the grid edge count
  Weight max_weight = 1;
  GraphModel model = GraphModel::ErdosRenyi;
  double deletion_fraction = 1.0;
  double increase_rate = 0.0;  // expected increases per deletion
  int queries_per_update = 0;
  std::uint64_t seed = 1;
};

struct Schedule {
  DynamicGraph initial;
  std::vector<StreamItem> events;
  std::uint64_t seed = 0;

  std::size_t update_count() const;
};

Schedule generate_instance(const GenerateOptions& opts);
// Deletes a uniformly random fraction of g's edges in random order, with
// weight increases and query probes sprinkled in.
Schedule make_schedule(DynamicGraph g, double deletion_fraction, double increase_rate,
                       int queries_per_update, std::uint64_t seed);
DynamicGraph path_graph(NodeId n, Weight w = 1);
DynamicGraph grid_graph(NodeId rows, NodeId cols, Weight w = 1);
std::string to_text(const Schedule& s);

// Exact distances.
std::vector<Weight> bellman_ford(const DynamicGraph& g, NodeId source);
std::vector<std::vector<Weight>> all_pairs(const DynamicGraph& g,
                                           Execution ex = Execution::Serial);

enum class Algorithm { ExactEs, FullRange, Apsp };

struct AlgorithmConfig {
  Algorithm algorithm = Algorithm::FullRange;
  Rational epsilon{1, 2};
  NodeId source = 0;
  int k = 2;
  std::optional<int> p;
  std::optional<int> q;
  double c = 2.0;
  std::uint64_t seed = 1;
  Execution execution = Execution::Serial;
  bool oracle = true;
  int oracle_stride = 1;
  bool all_pairs_probes = true;  // APSP: query every pair at checked updates
  bool check_invariants = false;
  bool timing = false;
  std::optional<std::size_t> fault_at;  // corrupt one estimate after this update
};

struct Violation {
  std::size_t update = 0;  // 0 = initial state, i = after the i-th update
  std::string kind;
  NodeId u = kNoNode;
  NodeId v = kNoNode;
  Rational estimate;
  Weight dist = kInf;
};

struct ValidationReport {
  std::string algorithm;
  NodeId n = 0;
  std::size_t m = 0;
  std::size_t updates = 0;
  std::size_t queries = 0;
  std::size_t checked_states = 0;
  Rational bound{1};
  std::vector<double> max_stretch;  // one entry per checked state
  std::size_t underestimates = 0;
  std::size_t bound_violations = 0;
  std::map<std::string, std::size_t> invariant_failures;
  std::map<std::string, std::uint64_t> work;
  std::vector<Violation> violations;  // first few, in order
  std::vector<Rational> answers;      // answers to schedule query probes
  std::vector<Rational> final_estimates;  // SSSP only, not part of the text form
  std::optional<double> wall_ms;

  bool ok() const;
  double overall_max_stretch() const;
  std::string to_text() const;
};

ValidationReport run_with_oracle(const Schedule& schedule, const AlgorithmConfig& config);

struct BallCheckCounts {
  std::size_t checks = 0;
  std::size_t sandwich = 0;     // dist <= est <= alpha dist + beta fails
  std::size_t containment = 0;  // v in B(u) but dist(u,v) >= dist(u, A_{i+1})
  std::size_t witness = 0;      // no witness although s(dist, p-1-i) <= D
  std::size_t radius = 0;       // more radius increases than the cap

  bool ok() const { return sandwich == 0 && containment == 0 && witness == 0 && radius == 0; }
};

// ceil(log_{1+eps} D) + 2.
int radius_increase_cap(const BallSystem& balls);
// Exhaustive ball checks against an all-pairs distance table of the current graph.
BallCheckCounts check_ball_properties(const BallSystem& balls,
                                      const std::vector<std::vector<Weight>>& dist,
                                      bool check_containment);

struct HopsetPair {
  NodeId u;
  NodeId v;
  Weight dist;
  int hops;  // minimum hops reaching weight <= (1+2eps)dist in G u F
};

struct HopsetCheckReport {
  int p = 0;
  Weight delta = 0;
  Rational epsilon;
  std::size_t f_edges = 0;
  Rational band_min;  // pairs with dist >= band_min are in the covered band
  std::size_t pairs = 0;
  std::size_t band_pairs = 0;
  std::size_t band_violations = 0;
  std::size_t additive_violations = 0;
  std::vector<HopsetPair> per_pair;

  bool ok() const { return band_violations == 0 && additive_violations == 0; }
};

// Static hop set from sampled priorities: every u links to each v with
// dist(u,v) < dist(u, A_{i+1}) by an edge of weight dist(u,v).
HopsetCheckReport static_hopset_check(const DynamicGraph& g, int p, Weight delta,
                                      const Rational& epsilon, std::uint64_t seed,
                                      bool force_empty_f = false, double c = 2.0);

}  // namespace decrsp
