// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Every threshold lives in the constants
// below.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"
#include "rftrlp/bench.hpp"
#include "rftrlp/oracle.hpp"
#include "rftrlp/report.hpp"
#include "rftrlp/solver.hpp"
#include "support.hpp"

using namespace rftrlp;
using nlohmann::json;

namespace {

// Corpus and tolerances.
constexpr int kCorpusSize = 200;
constexpr int kCorpusMinN = 6;
constexpr int kCorpusMaxN = 10;
constexpr double kCorpusDensity = 0.6;
constexpr int kCorpusScenarios[] = {1, 5, 20};
constexpr std::uint64_t kCorpusSeedBase = 1000;
constexpr double kCorpusBudgetSeconds = 15 * 60;

constexpr int kSufficiencyInstances = 50;
constexpr int kSufficiencyMaxN = 8;

constexpr int kGateCount = 100;
constexpr int kGateMaxEdges = 12;

constexpr int kLpInstances = 50;
constexpr int kLpMinN = 8;
constexpr int kLpMaxN = 12;
constexpr int kLpScenarios = 10;
constexpr double kLpDensity = 0.4;
constexpr double kLpOrderTolerance = 1e-6;  // relative, for LP <= OPT and LP(FB) >= LP(CB)
constexpr double kLpDominanceShare = 0.80;
constexpr double kLpMeanRatio = 0.85;

constexpr int kGamma2Instances = 30;
constexpr int kGamma2MaxN = 8;

constexpr int kMonotoneTrials = 500;
constexpr int kScalingTrials = 100;

constexpr double kSolveTimeLimit = 600.0;

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double v, int digits = 3) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

GenConfig corpus_config(int k) {
  GenConfig cfg;
  cfg.flavor = k % 2 ? GenFlavor::Gen2 : GenFlavor::Gen1;
  cfg.n = kCorpusMinN + (k / 2) % (kCorpusMaxN - kCorpusMinN + 1);
  cfg.scenarios = kCorpusScenarios[(k / 10) % 3];
  cfg.dens = kCorpusDensity;
  cfg.gamma = 1;
  cfg.seed = kCorpusSeedBase + static_cast<std::uint64_t>(k);
  return cfg;
}

/// Report text with every "timings" member removed.
std::string without_timings(const std::string& report) {
  std::function<void(json&)> strip = [&](json& node) {
    if (node.is_object()) {
      node.erase("timings");
      for (auto& [key, child] : node.items()) strip(child);
    } else if (node.is_array()) {
      for (auto& child : node) strip(child);
    }
  };
  auto doc = json::parse(report);
  strip(doc);
  return doc.dump();
}

// ------------------------------------------------------------------ corpus

struct CorpusRun {
  Instance inst;
  std::optional<Solution> oracle;
  std::map<Method, SolveOutcome> outcomes;
  std::map<Method, std::string> reports;
};

std::vector<CorpusRun> run_corpus(double& seconds) {
  const auto start = Clock::now();
  std::vector<CorpusRun> runs;
  SolverOptions opts;
  opts.time_limit = kSolveTimeLimit;
  for (int k = 0; k < kCorpusSize; ++k) {
    CorpusRun run{generate(corpus_config(k)), {}, {}, {}};
    run.oracle = brute_force_optimum(run.inst, Predicate::Structural);
    for (Method m : {Method::FlowBased, Method::CutBased, Method::Iterative}) {
      auto out = solve_instance(run.inst, m, opts);
      run.reports[m] = solution_report(run.inst, out);
      run.outcomes.emplace(m, std::move(out));
    }
    runs.push_back(std::move(run));
  }
  seconds = seconds_since(start);
  return runs;
}

Verdict oracle_equivalence(const std::vector<CorpusRun>& runs, double seconds) {
  int mismatches = 0, feasible = 0;
  std::string first;
  for (const auto& run : runs) {
    if (run.oracle) ++feasible;
    for (const auto& [method, out] : run.outcomes) {
      bool ok = false;
      if (!run.oracle) {
        ok = out.status == milp::SolveStatus::Infeasible;
      } else {
        ok = out.status == milp::SolveStatus::Optimal && out.solution &&
             out.solution->robust_cost == run.oracle->robust_cost;
      }
      if (!ok) {
        ++mismatches;
        if (first.empty()) first = "; first: " + run.inst.label + " " + std::string(to_string(method));
      }
    }
  }
  const bool in_budget = seconds <= kCorpusBudgetSeconds;
  return {mismatches == 0 && in_budget,
          std::to_string(runs.size()) + " instances (" + std::to_string(feasible) + " feasible), " +
              std::to_string(mismatches) + " mismatches across fb/cb/it, " + fmt(seconds, 1) + " s" + first};
}

Verdict iterative_behavior(const std::vector<CorpusRun>& runs) {
  int convergent = 0, bad = 0;
  std::string first;
  for (const auto& run : runs) {
    const auto& out = run.outcomes.at(Method::Iterative);
    if (!out.trace || !out.trace->converged) continue;
    ++convergent;
    const auto m = build_transformed_graph(run.inst.network);
    const auto ds = derive_sets(run.inst.network, m);
    const bool ok = out.trace->monotone() &&
                    static_cast<int>(out.trace->rounds.size()) <= run.inst.network.node_count() && out.solution &&
                    feasible_structural(run.inst, m, ds, out.solution->chosen);
    if (!ok) {
      ++bad;
      if (first.empty()) first = "; first: " + run.inst.label;
    }
  }
  return {bad == 0 && convergent > 0,
          std::to_string(convergent) + " convergent runs, " + std::to_string(bad) + " violations" + first};
}

Verdict determinism(const std::vector<CorpusRun>& runs) {
  SolverOptions opts;
  opts.time_limit = kSolveTimeLimit;
  int differing = 0, compared = 0;
  std::string first;
  for (int k = 0; k < kCorpusSize; ++k) {
    const auto inst = generate(corpus_config(k));
    if (to_text(inst) != to_text(runs[static_cast<std::size_t>(k)].inst)) {
      ++differing;
      continue;
    }
    for (const auto& [method, report] : runs[static_cast<std::size_t>(k)].reports) {
      ++compared;
      const auto again = solution_report(inst, solve_instance(inst, method, opts));
      if (without_timings(again) != without_timings(report)) {
        ++differing;
        if (first.empty()) first = "; first: " + inst.label + " " + std::string(to_string(method));
      }
    }
  }
  return {differing == 0, std::to_string(compared) + " reports re-run, " + std::to_string(differing) + " differ" + first};
}

// ------------------------------------------------------------------ structural vs semantic

Verdict structural_sufficiency(const std::filesystem::path& report_path) {
  long checked_sets = 0, structural_sets = 0, violations = 0;
  json discrepancies = json::array();
  for (int k = 0; k < kSufficiencyInstances; ++k) {
    GenConfig cfg;
    cfg.flavor = k % 2 ? GenFlavor::Gen2 : GenFlavor::Gen1;
    cfg.n = 5 + k % (kSufficiencyMaxN - 4);
    cfg.dens = 0.6;
    cfg.scenarios = 1;
    cfg.seed = 5000 + static_cast<std::uint64_t>(k);
    const auto inst = generate(cfg);
    const auto m = build_transformed_graph(inst.network);
    const auto ds = derive_sets(inst.network, m);
    const StructuralChecker structural(inst, m, ds);
    const SemanticChecker semantic(inst);
    const std::uint64_t all = std::uint64_t{1} << inst.network.node_count();
    long structural_here = 0, semantic_here = 0;
    for (std::uint64_t mask = 0; mask < all; ++mask) {
      ++checked_sets;
      const bool st = structural(NodeSet::from_mask(mask));
      const bool se = semantic(mask);
      structural_here += st;
      semantic_here += se;
      if (st && !se) ++violations;
    }
    structural_sets += structural_here;
    if (structural_here == 0 && semantic_here > 0) {
      discrepancies.push_back({{"instance", inst.label},
                               {"n", inst.network.node_count()},
                               {"semantic_feasible_sets", semantic_here},
                               {"vbar", ds.vbar.ids()},
                               {"reason", "FRE rows exclude every set that survives all single failures"}});
    }
  }
  json report = {{"version", 1},
                 {"kind", "fre_discrepancies"},
                 {"instances", kSufficiencyInstances},
                 {"subsets_checked", checked_sets},
                 {"violations", violations},
                 {"discrepancies", discrepancies}};
  std::ofstream(report_path) << report.dump(2) << '\n';
  const bool written = std::filesystem::exists(report_path);
  return {violations == 0 && written,
          std::to_string(checked_sets) + " subsets, " + std::to_string(structural_sets) + " structurally feasible, " +
              std::to_string(violations) + " not semantically feasible; " + std::to_string(discrepancies.size()) +
              " FRE-only-infeasible instances listed in " + report_path.filename().string()};
}

// ------------------------------------------------------------------ connectivity gate

int run_validate(const std::filesystem::path& cli, const std::filesystem::path& instance, std::string& err) {
  const auto err_path = instance.string() + ".err";
  const std::string cmd = cli.string() + " validate -i " + instance.string() + " >/dev/null 2>" + err_path;
  const int status = std::system(cmd.c_str());
  std::ifstream in(err_path);
  err.assign(std::istreambuf_iterator<char>(in), {});
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Verdict connectivity_gate(const std::filesystem::path& cli, const std::filesystem::path& work) {
  std::filesystem::create_directories(work);
  std::mt19937_64 rng(77);
  int rejected_ok = 0, accepted_ok = 0, misclassified = 0, produced_bad = 0, trials = 0;
  std::string first;
  // Random sparse graphs that fail 2-edge-connectivity by exhaustive bridge search.
  while (produced_bad < kGateCount && trials < 100000) {
    ++trials;
    const int n = 4 + static_cast<int>(rng() % 5);
    std::vector<Edge> edges;
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v)
        if (rng() % 100 < 45 && static_cast<int>(edges.size()) < kGateMaxEdges) edges.push_back({u, v, 100});
    const Network net(n, edges, 300);
    if (support::exhaustive_k_edge_connected(net, 2)) continue;
    ++produced_bad;
    const Instance inst{net, ScenarioSet({std::vector<Cost>(static_cast<std::size_t>(n), 1)}), 1, 0,
                        "gate-bad-" + std::to_string(produced_bad)};
    const auto path = work / (inst.label + ".json");
    save(inst, path);
    std::string err;
    const int code = run_validate(cli, path, err);
    if (code == 1 && err.find("\"connectivity\"") != std::string::npos) {
      ++rejected_ok;
    } else {
      ++misclassified;
      if (first.empty()) first = "; first: " + inst.label;
    }
  }
  for (int k = 0; k < kGateCount; ++k) {
    GenConfig cfg;
    cfg.n = 6 + k % 3;
    cfg.dens = cfg.n == 6 ? 0.6 : cfg.n == 7 ? 0.5 : 0.4;
    cfg.seed = 9000 + static_cast<std::uint64_t>(k);
    cfg.flavor = k % 2 ? GenFlavor::Gen2 : GenFlavor::Gen1;
    const auto inst = generate(cfg);
    const bool exhaustive = inst.network.edge_count() <= static_cast<std::size_t>(kGateMaxEdges) &&
                            support::exhaustive_k_edge_connected(inst.network, 2);
    const auto path = work / ("gate-good-" + std::to_string(k) + ".json");
    save(inst, path);
    std::string err;
    const int code = run_validate(cli, path, err);
    if (code == 0 && exhaustive) {
      ++accepted_ok;
    } else {
      ++misclassified;
      if (first.empty()) first = "; first: " + inst.label;
    }
  }
  std::filesystem::remove_all(work);
  return {misclassified == 0 && rejected_ok == kGateCount && accepted_ok == kGateCount,
          std::to_string(rejected_ok) + "/" + std::to_string(kGateCount) + " bridged graphs rejected, " +
              std::to_string(accepted_ok) + "/" + std::to_string(kGateCount) + " generator outputs accepted, " +
              std::to_string(misclassified) + " misclassified" + first};
}

// ------------------------------------------------------------------ LP relaxations

Verdict lp_ordering() {
  SolverOptions lp;
  lp.lp_only = true;
  lp.time_limit = kSolveTimeLimit;
  int used = 0, skipped = 0, order_violations = 0, fb_dominates = 0;
  double ratio_sum = 0.0;
  std::string first;
  for (std::uint64_t seed = 1; used < kLpInstances && seed < 1000; ++seed) {
    GenConfig cfg;
    cfg.flavor = seed % 2 ? GenFlavor::Gen1 : GenFlavor::Gen2;
    cfg.n = kLpMinN + static_cast<int>(seed % (kLpMaxN - kLpMinN + 1));
    cfg.scenarios = kLpScenarios;
    cfg.dens = kLpDensity;
    cfg.seed = 7000 + seed;
    const auto inst = generate(cfg);
    const auto opt = brute_force_optimum(inst, Predicate::Structural);
    if (!opt) {
      ++skipped;
      continue;
    }
    ++used;
    const double best = static_cast<double>(opt->robust_cost);
    const auto fb = solve_instance(inst, Method::FlowBased, lp);
    const auto cb = solve_instance(inst, Method::CutBased, lp);
    const double tol = kLpOrderTolerance * std::max(1.0, best);
    const bool fb_ok = fb.status == milp::SolveStatus::Optimal && fb.objective <= best + tol;
    const bool cb_ok = cb.status == milp::SolveStatus::Optimal && cb.objective <= best + tol;
    if (!fb_ok || !cb_ok) {
      ++order_violations;
      if (first.empty()) first = "; first: " + inst.label;
      continue;
    }
    if (fb.objective >= cb.objective - tol) ++fb_dominates;
    ratio_sum += best > 0 ? fb.objective / best : 1.0;
  }
  const double share = used ? static_cast<double>(fb_dominates) / used : 0.0;
  const double mean_ratio = used ? ratio_sum / used : 0.0;
  return {used == kLpInstances && order_violations == 0 && share >= kLpDominanceShare && mean_ratio >= kLpMeanRatio,
          std::to_string(used) + " feasible instances (" + std::to_string(skipped) + " FRE-infeasible skipped), " +
              std::to_string(order_violations) + " LP>OPT, LP(FB)>=LP(CB) on " + fmt(100 * share, 1) +
              "%, mean LP(FB)/OPT " + fmt(mean_ratio, 4) + first};
}

// ------------------------------------------------------------------ two failures

Verdict gamma_two() {
  int matched = 0, feasible = 0, instances = 0;
  std::string first;
  SolverOptions opts;
  opts.time_limit = kSolveTimeLimit;
  for (int k = 0; k < kGamma2Instances; ++k) {
    GenConfig cfg;
    cfg.gamma = 2;
    cfg.n = 6 + k % (kGamma2MaxN - 5);
    cfg.dens = 0.7;
    cfg.scenarios = 1 + k % 3;
    cfg.flavor = k % 2 ? GenFlavor::Gen2 : GenFlavor::Gen1;
    cfg.seed = 3000 + static_cast<std::uint64_t>(k);
    const auto inst = generate(cfg);
    ++instances;
    const auto ref = brute_force_optimum(inst, Predicate::Structural);
    const auto out = solve_instance(inst, Method::FlowBased, opts);
    bool ok = false;
    if (!ref) {
      ok = out.status == milp::SolveStatus::Infeasible;
    } else {
      ++feasible;
      ok = out.status == milp::SolveStatus::Optimal && out.solution && out.solution->robust_cost == ref->robust_cost;
    }
    if (ok) ++matched;
    else if (first.empty()) first = "; first: " + inst.label;
  }
  return {matched == instances && instances == kGamma2Instances,
          std::to_string(matched) + "/" + std::to_string(instances) + " match brute force (" +
              std::to_string(feasible) + " feasible)" + first};
}

// ------------------------------------------------------------------ robust objective

Verdict robust_objective() {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<Cost> cost(0, 200);
  int monotone_bad = 0, single_bad = 0, scaling_bad = 0, argmin_bad = 0;
  for (int trial = 0; trial < kMonotoneTrials; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 10);
    const int count = 1 + static_cast<int>(rng() % 6);
    std::vector<std::vector<Cost>> rows(static_cast<std::size_t>(count), std::vector<Cost>(static_cast<std::size_t>(n)));
    for (auto& row : rows)
      for (auto& c : row) c = cost(rng);
    const auto chosen = NodeSet::from_mask(rng() & ((std::uint64_t{1} << n) - 1));
    const auto before = robust_cost(chosen, ScenarioSet(rows)).robust;
    std::vector<Cost> extra(static_cast<std::size_t>(n));
    for (auto& c : extra) c = cost(rng);
    rows.push_back(extra);
    if (robust_cost(chosen, ScenarioSet(rows)).robust < before) ++monotone_bad;
    Cost plain = 0;
    for (NodeId v : chosen) plain += extra[static_cast<std::size_t>(v - 1)];
    if (robust_cost(chosen, ScenarioSet({extra})).robust != plain) ++single_bad;
  }
  for (int trial = 0; trial < kScalingTrials; ++trial) {
    GenConfig cfg;
    cfg.n = 6 + trial % 3;
    cfg.scenarios = 1 + trial % 5;
    cfg.flavor = trial % 2 ? GenFlavor::Gen2 : GenFlavor::Gen1;
    cfg.seed = 6000 + static_cast<std::uint64_t>(trial);
    auto inst = generate(cfg);
    const Cost factor = 2 + static_cast<Cost>(rng() % 9);
    auto scaled = inst;
    auto rows = inst.scenarios.rows();
    for (auto& row : rows)
      for (auto& c : row) c *= factor;
    scaled.scenarios = ScenarioSet(rows);
    const auto chosen = NodeSet::from_mask(rng() & ((std::uint64_t{1} << cfg.n) - 1));
    if (robust_cost(chosen, scaled.scenarios).robust != factor * robust_cost(chosen, inst.scenarios).robust)
      ++scaling_bad;
    const auto a = brute_force_optimum(inst, Predicate::Structural);
    const auto b = brute_force_optimum(scaled, Predicate::Structural);
    if (a.has_value() != b.has_value() || (a && (a->chosen != b->chosen || b->robust_cost != factor * a->robust_cost)))
      ++argmin_bad;
  }
  const int bad = monotone_bad + single_bad + scaling_bad + argmin_bad;
  return {bad == 0, std::to_string(kMonotoneTrials) + " scenario-addition trials (" + std::to_string(monotone_bad) +
                        " decreases, " + std::to_string(single_bad) + " single-scenario mismatches), " +
                        std::to_string(kScalingTrials) + " scaling trials (" + std::to_string(scaling_bad) +
                        " cost, " + std::to_string(argmin_bad) + " argmin mismatches)"};
}

// ------------------------------------------------------------------ hand fixtures

Verdict hand_fixtures() {
  std::vector<std::string> failures;
  const auto cycle = support::fixture("cycle4.json");
  const auto oracle = brute_force_optimum(cycle, Predicate::Structural);
  if (!oracle || oracle->robust_cost != 4) failures.push_back("oracle");
  for (Method m : {Method::FlowBased, Method::CutBased, Method::Iterative}) {
    const auto out = solve_instance(cycle, m);
    if (out.status != milp::SolveStatus::Optimal || !out.solution || out.solution->robust_cost != 4)
      failures.push_back(std::string(to_string(m)));
  }
  const auto fre = support::fixture("example_fre.json");
  const auto m = build_transformed_graph(fre.network);
  const auto ds = derive_sets(fre.network, m);
  if (ds.vbar != NodeSet{1, 3} || !ds.nprime.count(1) || ds.nprime.at(1) != NodeSet{2, 3})
    failures.push_back("derived sets");

  auto record = [](const std::string& method, double seconds) {
    BenchRecord r;
    r.instance = "hand";
    r.method = method;
    r.phase_ip_s = seconds;
    r.status = "optimal";
    return r;
  };
  const auto profile = performance_profile({record("A", 2.0), record("B", 4.0)});
  const auto& a = profile.curves.at(0);
  const auto& b = profile.curves.at(1);
  if (a.k_at(1.0) != 1.0 || b.k_at(1.0) != 0.0 || b.k_at(2.0) != 1.0) failures.push_back("profile");

  std::string detail = "4-cycle optimum 4 via oracle/fb/cb/it, vbar={1,3} and N'_1={2,3}, profile k_A(1)=1 k_B(1)=0 k_B(2)=1";
  if (!failures.empty()) {
    detail += "; failed:";
    for (const auto& f : failures) detail += " " + f;
  }
  return {failures.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path cli = RFTRLP_CLI_PATH;
  std::filesystem::path out_dir = std::filesystem::current_path();
  if (argc > 1) out_dir = argv[1];

  int failed = 0;
  auto print = [&](int id, const char* title, const Verdict& v) {
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << id << "] " << title << ": " << v.detail << std::endl;
    failed += !v.pass;
  };

  double corpus_seconds = 0.0;
  const auto corpus = run_corpus(corpus_seconds);
  print(1, "exact agreement with brute force", oracle_equivalence(corpus, corpus_seconds));
  print(2, "structural feasibility implies survivability",
        structural_sufficiency(out_dir / "fre_discrepancies.json"));
  print(3, "edge-connectivity gate", connectivity_gate(cli, out_dir / "acceptance_gate"));
  print(4, "iterative traces", iterative_behavior(corpus));
  print(5, "LP relaxation ordering", lp_ordering());
  print(6, "two-failure budget", gamma_two());
  print(7, "robust objective properties", robust_objective());
  print(8, "hand-verified fixtures", hand_fixtures());
  print(9, "deterministic reports", determinism(corpus));
  return failed == 0 ? 0 : 1;
}
