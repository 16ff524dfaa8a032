// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "decrsp/apsp_oracle.hpp"
#include "decrsp/harness.hpp"
#include "decrsp/hopset_sssp.hpp"
#include "decrsp/layered_sssp.hpp"
#include "decrsp/param_series.hpp"

using namespace decrsp;

namespace {

// Pinned tolerances.
constexpr double kSsspStretch = 1.5;
constexpr double kApspStretch = 5.25;  // (2 + 1/2)^2 - 1
constexpr double kRegression = 1.25;
// Work constants frozen from the reference run of this suite.
constexpr double kEsWorkC = 0.221;
constexpr double kMonotoneWorkC = 0.539;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

const UpdateEvent& as_update(const StreamItem& item) { return std::get<UpdateEvent>(item); }

Outcome es_exactness() {
  std::mt19937_64 rng(101);
  std::size_t states = 0, mismatches = 0;
  for (int inst = 0; inst < 50; ++inst) {
    const NodeId n = 20 + static_cast<NodeId>(rng() % 181);
    const std::int64_t cap = std::min<std::int64_t>(1500, static_cast<std::int64_t>(n) * (n - 1) / 2);
    const std::int64_t m = std::min<std::int64_t>(cap, n + static_cast<std::int64_t>(rng() % (3 * n)));
    const Weight W = 1 + static_cast<Weight>(rng() % 32);
    Schedule s = generate_instance({.n = n, .m = m, .max_weight = W, .increase_rate = 0.3,
                                    .seed = 1000 + static_cast<std::uint64_t>(inst)});
    DynamicGraph g = s.initial;
    const NodeId src = static_cast<NodeId>(rng() % static_cast<std::uint64_t>(n));
    EsTree t(g, {src}, static_cast<Weight>(n) * W);
    std::vector<NodeId> srcs{src};
    auto compare = [&] {
      ++states;
      std::vector<Weight> d = dijkstra_all(g, srcs);
      for (NodeId v = 0; v < n; ++v)
        if (t.level(v) != d[static_cast<std::size_t>(v)]) ++mismatches;
    };
    compare();
    std::vector<LevelChange> changed;
    for (const StreamItem& item : s.events) {
      changed.clear();
      t.update(g.apply_update(as_update(item)), changed);
      compare();
    }
  }
  return {mismatches == 0, "instances=50 states=" + std::to_string(states) + " mismatches=" + std::to_string(mismatches)};
}

// c = 1/2 keeps the priority sets sparse at these sizes, so radii actually grow.
BallParams ball_params(int p, Rational eps, Weight depth, std::uint64_t seed, double c = 0.5) {
  BallParams bp;
  bp.c = c;
  bp.p = p;
  bp.epsilon = eps;
  bp.depth = depth;
  bp.seed = seed;
  bp.strict_p = false;
  return bp;
}

Outcome monotone_observations() {
  std::size_t violations = 0;
  std::uint64_t checks = 0, stretched = 0, inserted = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const NodeId n = seed % 2 ? 40 : 49;
    const GraphModel model = seed % 2 ? GraphModel::ErdosRenyi : GraphModel::Grid;
    Schedule s = generate_instance({.n = n, .m = 7 * n / 4, .max_weight = 12, .model = model,
                                    .increase_rate = seed % 3 ? 0.3 : 2.0, .seed = 200 + seed});
    DynamicGraph g = s.initial;
    const Weight depth = static_cast<Weight>(n) * 12;
    BallSystem balls(g, ball_params(2 + static_cast<int>((seed / 2) % 2), Rational(1), depth, seed), exact_contract());
    ShortcutSssp hop(g, balls, {0}, hopset_params_for(balls, Rational(1, 2), balls.params().p, 8, depth, n));
    MonotoneInvariantMonitor monitor;
    hop.set_monitor(&monitor);
    const std::uint64_t initial_edges = hop.edges_ever();
    std::vector<EstimateChange> changed;
    for (const StreamItem& item : s.events) {
      ChangeRecord c = g.apply_update(as_update(item));
      const BallChangeSet& ev = balls.update(c);
      changed.clear();
      hop.update(c, ev, changed);
    }
    violations += monitor.violations().size();
    checks += monitor.checks();
    stretched += monitor.stretched_seen();
    inserted += hop.edges_ever() - initial_edges;
  }
  const bool exercised = inserted > 0 && stretched > 0 && checks > 0;
  return {violations == 0 && exercised,
          "schedules=20 checks=" + std::to_string(checks) + " insertions=" + std::to_string(inserted) +
              " stretched_seen=" + std::to_string(stretched) + " violations=" + std::to_string(violations)};
}

Outcome param_series() {
  std::mt19937_64 rng(303);
  std::size_t failures = 0;
  for (int draw = 0; draw < 200; ++draw) {
    ParamInputs in;
    in.alpha = BigRational(1) + BigRational(static_cast<int>(rng() % 16), 16);
    in.beta = BigRational(static_cast<int>(rng() % 9), 4);
    in.epsilon = BigRational(1 + static_cast<int>(rng() % 16), 16);
    in.a = (1 + in.epsilon) * in.alpha;
    in.b = (1 + in.epsilon) * in.beta + 1;
    in.p = 2 + static_cast<int>(rng() % 3);
    in.delta = in.b + static_cast<int>(rng() % 100);
    in.depth = in.delta * (1 + static_cast<int>(rng() % 30));
    BigRational base = pow_big(4 * in.a * in.a * in.a / in.epsilon, in.p * in.p);
    in.n = boost::multiprecision::numerator(ceil_big(base)) * (1 + rng() % 4);
    ParamSeries::Checks c = ParamSeries::derive(in, true).check();
    if (!(c.p_bound && c.radius_identity && c.radius_closed_form && c.radius_sum_closed_form && c.gamma_cap && c.last_radius_cap)) ++failures;
  }
  return {failures == 0, "draws=200 failures=" + std::to_string(failures)};
}

Outcome ball_properties() {
  BallCheckCounts total;
  std::size_t failed_checks = 0;
  auto run = [&](const Schedule& s, const BallParams& bp, SsspContract contract, bool containment) {
    DynamicGraph g = s.initial;
    BallSystem b(g, bp, std::move(contract));
    auto tally = [&] {
      BallCheckCounts c = check_ball_properties(b, all_pairs(g), containment);
      total.checks += c.checks;
      total.sandwich += c.sandwich;
      total.containment += c.containment;
      total.witness += c.witness;
      total.radius += c.radius;
      failed_checks += !c.ok();
    };
    tally();
    for (const StreamItem& item : s.events) {
      b.update(g.apply_update(as_update(item)));
      tally();
    }
  };
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    Schedule s = generate_instance({.n = 60, .m = 140, .max_weight = 10, .increase_rate = 0.3, .seed = 400 + seed});
    run(s, ball_params(2 + static_cast<int>(seed % 2), Rational(1, 2), 600, seed, seed <= 6 ? 0.5 : 2.0), exact_contract(), true);
  }
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Schedule s = generate_instance({.n = 40, .m = 90, .max_weight = 8, .seed = 450 + seed});
    run(s, ball_params(2, Rational(1, 2), 320, seed), full_range_contract(Rational(1, 4), StackOptions{}), false);
  }
  return {failed_checks == 0,
          "checks=" + std::to_string(total.checks) + " sandwich=" + std::to_string(total.sandwich) +
              " containment=" + std::to_string(total.containment) + " witness=" + std::to_string(total.witness) +
              " radius=" + std::to_string(total.radius)};
}

Outcome full_range_sssp() {
  std::size_t violations = 0, invariants = 0, states = 0;
  double worst = 1.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const NodeId n = seed <= 10 ? 100 : 60 + static_cast<NodeId>(seed);
    Schedule s = generate_instance({.n = n, .m = 5 * n / 2, .max_weight = 32, .seed = 500 + seed});
    AlgorithmConfig cfg;
    cfg.epsilon = Rational(1, 2);
    cfg.p = 4;
    cfg.q = 3;
    cfg.seed = seed;
    cfg.check_invariants = true;
    ValidationReport r = run_with_oracle(s, cfg);
    violations += r.underestimates + r.bound_violations;
    for (const auto& [name, count] : r.invariant_failures) invariants += count;
    states += r.checked_states;
    worst = std::max(worst, r.overall_max_stretch());
  }
  return {violations == 0 && invariants == 0 && worst <= kSsspStretch,
          "schedules=20 states=" + std::to_string(states) + " max_stretch=" + fmt(worst) +
              " violations=" + std::to_string(violations) + " invariant_failures=" + std::to_string(invariants)};
}

Outcome apsp_stretch() {
  std::size_t violations = 0, expansions = 0, other = 0, queries = 0;
  double worst = 1.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const NodeId n = 30 + static_cast<NodeId>(seed) * 3;
    Schedule s = generate_instance({.n = n, .m = 5 * n / 2, .max_weight = 16, .increase_rate = 0.2, .seed = 600 + seed});
    AlgorithmConfig cfg;
    cfg.algorithm = Algorithm::Apsp;
    cfg.k = 2;
    cfg.epsilon = Rational(1, 2);
    cfg.seed = seed;
    cfg.check_invariants = true;
    cfg.oracle_stride = 2;
    ValidationReport r = run_with_oracle(s, cfg);
    violations += r.underestimates + r.bound_violations;
    for (const auto& [name, count] : r.invariant_failures) (name == "apsp.expansions" ? expansions : other) += count;
    queries += r.checked_states * static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    worst = std::max(worst, r.overall_max_stretch());
  }
  return {violations == 0 && expansions == 0 && other == 0 && worst <= kApspStretch,
          "schedules=10 queries=" + std::to_string(queries) + " max_stretch=" + fmt(worst) +
              " violations=" + std::to_string(violations) + " expansion_failures=" + std::to_string(expansions) +
              " invariant_failures=" + std::to_string(other)};
}

Outcome static_hopset() {
  std::size_t band_pairs = 0, band_violations = 0, additive = 0, runs = 0;
  struct Case {
    DynamicGraph g;
    Weight delta;
  };
  std::vector<Case> cases;
  cases.push_back({path_graph(100), 1});
  cases.push_back({path_graph(100), 2});
  cases.push_back({path_graph(60, 3), 4});
  cases.push_back({grid_graph(10, 10, 4), 1});
  cases.push_back({grid_graph(8, 12, 5), 2});
  for (const Case& c : cases)
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      HopsetCheckReport h = static_hopset_check(c.g, 3, c.delta, Rational(1, 2), 700 + seed);
      band_pairs += h.band_pairs;
      band_violations += h.band_violations;
      additive += h.additive_violations;
      ++runs;
    }
  return {band_violations == 0 && additive == 0 && band_pairs > 0,
          "runs=" + std::to_string(runs) + " band_pairs=" + std::to_string(band_pairs) +
              " band_violations=" + std::to_string(band_violations) + " additive_violations=" + std::to_string(additive)};
}

struct WorkRatios {
  double es = 0;
  double monotone = 0;
};

WorkRatios measure_work() {
  WorkRatios w;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Schedule s = generate_instance({.n = 120, .m = 400, .max_weight = 16, .increase_rate = 0.3, .seed = 800 + seed});
    DynamicGraph g = s.initial;
    const Weight depth = 200;
    EsTree t(g, {0}, depth);
    std::vector<LevelChange> changed;
    for (const StreamItem& item : s.events) {
      changed.clear();
      t.update(g.apply_update(as_update(item)), changed);
    }
    w.es = std::max(w.es, static_cast<double>(t.work()) / (400.0 * static_cast<double>(depth)));
  }
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Schedule s = generate_instance({.n = 60, .m = 180, .max_weight = 12, .increase_rate = 0.3, .seed = 850 + seed});
    DynamicGraph g = s.initial;
    BallSystem balls(g, ball_params(2, Rational(1), 720, seed), exact_contract());
    ShortcutSssp hop(g, balls, {0}, hopset_params_for(balls, Rational(1, 2), 2, 4, 720, 60));
    std::vector<EstimateChange> changed;
    for (const StreamItem& item : s.events) {
      ChangeRecord c = g.apply_update(as_update(item));
      const BallChangeSet& ev = balls.update(c);
      changed.clear();
      hop.update(c, ev, changed);
    }
    const double model = static_cast<double>(hop.edges_ever()) * static_cast<double>(hop.max_level()) +
                         static_cast<double>(hop.weight_updates());
    w.monotone = std::max(w.monotone, static_cast<double>(hop.work()) / model);
  }
  return w;
}

Outcome work_regression() {
  WorkRatios w = measure_work();
  const bool es_ok = w.es <= kRegression * kEsWorkC;
  const bool mono_ok = w.monotone <= kRegression * kMonotoneWorkC;
  return {es_ok && mono_ok, "es_ratio=" + fmt(w.es) + " es_C=" + fmt(kEsWorkC) + " monotone_ratio=" + fmt(w.monotone) +
                                " monotone_C=" + fmt(kMonotoneWorkC) + " allowed=" + fmt(kRegression) + "xC"};
}

Outcome determinism() {
  std::size_t differing = 0, compared = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    for (Algorithm alg : {Algorithm::ExactEs, Algorithm::FullRange, Algorithm::Apsp}) {
      // SSSP probes must start at the source, so only APSP schedules carry queries.
      GenerateOptions go{.n = 50, .m = 120, .max_weight = 20, .increase_rate = 0.3,
                         .queries_per_update = alg == Algorithm::Apsp ? 1 : 0, .seed = 900 + seed};
      const Schedule s1 = generate_instance(go);
      const Schedule s2 = generate_instance(go);
      ++compared;
      differing += to_text(s1) != to_text(s2);
      AlgorithmConfig cfg;
      cfg.algorithm = alg;
      cfg.seed = seed;
      cfg.execution = Execution::Serial;
      cfg.check_invariants = true;
      cfg.oracle_stride = 3;
      if (alg == Algorithm::FullRange) {
        cfg.p = 4;
        cfg.q = 3;
      }
      ++compared;
      differing += run_with_oracle(s1, cfg).to_text() != run_with_oracle(s2, cfg).to_text();
    }
  }
  return {differing == 0, "compared=" + std::to_string(compared) + " differing=" + std::to_string(differing)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decrsp acceptance suite"};
  std::vector<int> only;
  app.add_option("--only", only, "run only these criteria")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"es_tree exactness", es_exactness},
      {"monotone observations", monotone_observations},
      {"param series identities", param_series},
      {"ball properties", ball_properties},
      {"full-range sssp stretch", full_range_sssp},
      {"apsp stretch", apsp_stretch},
      {"static hop set", static_hopset},
      {"work regression", work_regression},
      {"determinism", determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[i].first << "): " << o.detail
              << " seconds=" << fmt(secs) << std::endl;
  }
  return all ? 0 : 1;
}
