#include "decrsp/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <optional>
#include <string>

#include "decrsp/harness.hpp"

namespace decrsp {

namespace {

struct CliArgs {
  std::string mode;
  std::string graph;
  std::string updates;
  std::string epsilon = "1/2";
  NodeId source = 0;
  int k = 2;
  std::uint64_t seed = 1;
  std::optional<int> p;
  std::optional<int> q;
  double c = 2.0;
  bool oracle_check = false;
  int oracle_stride = 1;
  std::string report;
  bool exact = false;
  std::string target = "sssp";  // bench/check: es | sssp | apsp
  bool parallel = false;
  bool invariants = false;
  // Generated instances for bench/check when no graph is given.
  NodeId n = 60;
  std::int64_t m = 200;
  Weight max_weight = 32;
  std::string model = "erdos-renyi";
  double deletion_fraction = 1.0;
  double increase_rate = 0.0;
  std::optional<Weight> hopset_delta;
};

Schedule load_schedule(const CliArgs& a, bool allow_queries) {
  std::ifstream gin(a.graph);
  if (!gin) throw ConfigError("cannot open graph file '" + a.graph + "'");
  Schedule s;
  s.initial = load_graph(gin);
  s.seed = a.seed;
  if (!a.updates.empty()) {
    std::ifstream uin(a.updates);
    if (!uin) throw ConfigError("cannot open updates file '" + a.updates + "'");
    s.events = parse_updates(uin, s.initial, allow_queries);
  }
  return s;
}

Schedule schedule_for(const CliArgs& a, bool allow_queries) {
  if (!a.graph.empty()) return load_schedule(a, allow_queries);
  GenerateOptions go;
  go.n = a.n;
  go.m = a.m;
  go.max_weight = a.max_weight;
  go.model = parse_model(a.model);
  go.deletion_fraction = a.deletion_fraction;
  go.increase_rate = a.increase_rate;
  go.seed = a.seed;
  return generate_instance(go);
}

AlgorithmConfig config_for(const CliArgs& a, Algorithm alg) {
  AlgorithmConfig cfg;
  cfg.algorithm = alg;
  cfg.epsilon = parse_rational(a.epsilon);
  cfg.source = a.source;
  cfg.k = a.k;
  cfg.p = a.p;
  cfg.q = a.q;
  cfg.c = a.c;
  cfg.seed = a.seed;
  cfg.execution = a.parallel ? Execution::Parallel : Execution::Serial;
  cfg.oracle = a.oracle_check;
  cfg.oracle_stride = a.oracle_stride;
  cfg.all_pairs_probes = a.oracle_check;
  cfg.check_invariants = a.invariants;
  return cfg;
}

Algorithm target_of(const CliArgs& a) {
  if (a.exact || a.target == "es") return Algorithm::ExactEs;
  if (a.target == "apsp") return Algorithm::Apsp;
  return Algorithm::FullRange;
}

void emit_report(const CliArgs& a, const std::string& text, std::ostream& out) {
  if (a.report.empty()) {
    out << text;
    return;
  }
  std::ofstream f(a.report);
  if (!f) throw ConfigError("cannot write report file '" + a.report + "'");
  f << text;
}

int run_stream(const CliArgs& a, Algorithm alg, std::ostream& out, std::ostream& err) {
  Schedule s = load_schedule(a, true);
  ValidationReport r = run_with_oracle(s, config_for(a, alg));
  for (const Rational& ans : r.answers) out << ans.to_string() << '\n';
  if (alg != Algorithm::Apsp && r.answers.empty())
    for (std::size_t v = 0; v < r.final_estimates.size(); ++v)
      out << v << ' ' << r.final_estimates[v].to_string() << '\n';
  if (!a.report.empty()) emit_report(a, r.to_text(), out);
  else if (a.oracle_check) err << r.to_text();
  return a.oracle_check && !r.ok() ? 1 : 0;
}

int run_bench(const CliArgs& a, std::ostream& out) {
  Schedule s = schedule_for(a, false);
  const Algorithm alg = target_of(a);
  std::string text;
  text += "mode=bench\n";
  text += "n=" + std::to_string(s.initial.node_count()) + "\n";
  text += "m=" + std::to_string(s.initial.edge_count()) + "\n";
  text += "updates=" + std::to_string(s.update_count()) + "\n";
  text += "threads=" + std::to_string(parallel_threads()) + "\n";
  for (Execution ex : {Execution::Serial, Execution::Parallel}) {
    CliArgs b = a;
    b.oracle_check = false;
    b.parallel = ex == Execution::Parallel;
    AlgorithmConfig cfg = config_for(b, alg);
    cfg.timing = true;
    ValidationReport r = run_with_oracle(s, cfg);
    const std::string tag = ex == Execution::Serial ? "serial" : "parallel";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms.value_or(0));
    text += tag + ".wall_ms=" + buf + "\n";
    for (const auto& [name, count] : r.work) text += tag + ".work." + name + "=" + std::to_string(count) + "\n";
  }
  emit_report(a, text, out);
  return 0;
}

int run_check(const CliArgs& a, std::ostream& out) {
  Schedule s = schedule_for(a, false);
  if (a.hopset_delta) {
    HopsetCheckReport h = static_hopset_check(s.initial, a.p.value_or(3), *a.hopset_delta,
                                              parse_rational(a.epsilon), a.seed, false, a.c);
    std::string text;
    text += "mode=hopset\n";
    text += "p=" + std::to_string(h.p) + "\n";
    text += "delta=" + std::to_string(h.delta) + "\n";
    text += "epsilon=" + h.epsilon.to_string() + "\n";
    text += "f_edges=" + std::to_string(h.f_edges) + "\n";
    text += "band_min=" + h.band_min.to_string() + "\n";
    text += "pairs=" + std::to_string(h.pairs) + "\n";
    text += "band_pairs=" + std::to_string(h.band_pairs) + "\n";
    text += "band_violations=" + std::to_string(h.band_violations) + "\n";
    text += "additive_violations=" + std::to_string(h.additive_violations) + "\n";
    text += std::string("status=") + (h.ok() ? "PASS" : "FAIL") + "\n";
    emit_report(a, text, out);
    return h.ok() ? 0 : 1;
  }
  CliArgs b = a;
  b.oracle_check = true;
  b.invariants = true;
  const Algorithm alg = target_of(a);
  ValidationReport r = run_with_oracle(s, config_for(b, alg));
  emit_report(a, r.to_text(), out);
  return r.ok() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliArgs a;
  CLI::App app{"Decremental approximate shortest paths"};
  app.add_option("mode", a.mode, "sssp | apsp | bench | check")
      ->required()
      ->check(CLI::IsMember({"sssp", "apsp", "bench", "check"}));
  app.add_option("--graph", a.graph, "graph file");
  app.add_option("--updates", a.updates, "update stream file");
  app.add_option("--epsilon", a.epsilon, "approximation parameter, decimal or a/b");
  app.add_option("--source", a.source, "SSSP source");
  app.add_option("--k", a.k, "APSP priority count");
  app.add_option("--seed", a.seed, "random seed");
  app.add_option("--p", a.p, "hop-set priority count");
  app.add_option("--q", a.q, "layer count parameter");
  app.add_option("--c", a.c, "sampling constant");
  app.add_flag("--oracle-check", a.oracle_check, "validate against exact distances");
  app.add_option("--oracle-stride", a.oracle_stride, "check every s-th update")->check(CLI::PositiveNumber);
  app.add_option("--report", a.report, "write the key=value report here");
  app.add_flag("--exact", a.exact, "use an exact ES-tree for SSSP");
  app.add_option("--target", a.target, "bench/check algorithm: es | sssp | apsp")
      ->check(CLI::IsMember({"es", "sssp", "apsp"}));
  app.add_flag("--parallel", a.parallel, "run kernels with OpenMP");
  app.add_flag("--invariants", a.invariants, "run module invariant suites");
  app.add_option("--n", a.n, "generated node count");
  app.add_option("--m", a.m, "generated edge count");
  app.add_option("--max-weight", a.max_weight, "generated maximum weight");
  app.add_option("--model", a.model, "erdos-renyi | grid | power-law");
  app.add_option("--delete", a.deletion_fraction, "fraction of edges deleted");
  app.add_option("--increase-rate", a.increase_rate, "weight increases per deletion");
  app.add_option("--hopset-delta", a.hopset_delta, "check: run the static hop-set check with this delta");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  try {
    if (a.mode == "sssp") return run_stream(a, a.exact ? Algorithm::ExactEs : Algorithm::FullRange, out, err);
    if (a.mode == "apsp") return run_stream(a, Algorithm::Apsp, out, err);
    if (a.mode == "bench") return run_bench(a, out);
    return run_check(a, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace decrsp
