// Command line front end: gen, transform, validate, solve, oracle, bench, profile.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rftrlp/bench.hpp"
#include "rftrlp/error.hpp"
#include "rftrlp/formulation.hpp"
#include "rftrlp/milp/lp_format.hpp"
#include "rftrlp/oracle.hpp"
#include "rftrlp/report.hpp"
#include "rftrlp/solver.hpp"

namespace {

using namespace rftrlp;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

void error_line(const std::string& code, const std::string& message) {
  nlohmann::ordered_json doc;
  doc["error"] = code;
  doc["message"] = message;
  std::cerr << doc.dump() << '\n';
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io", "cannot open " + path + " for writing");
  out << text;
}

NodeSet parse_nodes(const std::string& text) {
  std::vector<NodeId> ids;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      ids.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ValidationError("node list entry '" + item + "' is not an integer");
    }
  }
  return NodeSet(std::move(ids));
}

NodePair parse_pair(const std::string& text) {
  const auto ids = parse_nodes(text).ids();
  if (ids.size() != 2) throw ValidationError("failed edge '" + text + "' must be written u,v");
  return NodePair::of(ids[0], ids[1]);
}

int exit_for(const Error& e) {
  static const std::set<std::string> failures{"validation", "parse",   "connectivity", "infeasible",
                                              "size_guard", "adapter", "generation",   "io", "model"};
  return failures.count(e.code()) ? kExitFailure : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust fault-tolerant regenerator location toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  std::string flavor = "gen1", out_path;
  GenConfig gcfg;
  gen->add_option("--flavor", flavor, "gen1 or gen2")->check(CLI::IsMember({"gen1", "gen2"}));
  gen->add_option("--n", gcfg.n, "Node count")->required();
  gen->add_option("--dens", gcfg.dens, "Edge density in (0,1]")->required();
  gen->add_option("--scenarios", gcfg.scenarios, "Cost scenario count")->required();
  gen->add_option("--gamma", gcfg.gamma, "Edge failure budget")->capture_default_str();
  gen->add_option("--d-max", gcfg.d_max, "Signal reach")->capture_default_str();
  gen->add_flag("--large", gcfg.large_mode, "Large-instance length range");
  gen->add_option("--seed", gcfg.seed, "Random seed")->required();
  gen->add_option("-o,--output", out_path, "Instance file")->required();

  // transform
  auto* transform = app.add_subcommand("transform", "Print the communication graph and derived sets");
  std::string in_path, report_path;
  std::vector<std::string> fail_specs;
  transform->add_option("-i,--input", in_path, "Instance file")->required();
  transform->add_option("--fail", fail_specs, "Failed edge u,v (repeatable)");
  transform->add_option("-o,--output", report_path, "Report file (default stdout)");

  // validate
  auto* validate = app.add_subcommand("validate", "Check schema and edge connectivity");
  validate->add_option("-i,--input", in_path, "Instance file")->required();
  validate->add_option("-o,--output", report_path, "Report file (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  std::string method = "fb", export_lp;
  SolverOptions sopt;
  solve->add_option("-i,--input", in_path, "Instance file")->required();
  solve->add_option("--method", method, "fb, cb or it")->check(CLI::IsMember({"fb", "cb", "it"}));
  solve->add_option("--time-limit", sopt.time_limit, "Seconds")->check(CLI::PositiveNumber);
  solve->add_flag("--warm-start", sopt.warm_start, "Seed with the degree-two preprocessing assignment");
  solve->add_flag("--lp-only", sopt.lp_only, "Solve the LP relaxation only");
  solve->add_option("--export-lp", export_lp, "Also write the model in LP format");
  solve->add_option("-o,--output", report_path, "Report file (default stdout)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Brute-force optimum or feasibility check");
  std::string predicate = "structural", check;
  oracle->add_option("-i,--input", in_path, "Instance file")->required();
  oracle->add_option("--predicate", predicate, "structural or semantic")
      ->check(CLI::IsMember({"structural", "semantic"}));
  oracle->add_option("--check", check, "Comma-separated node set to test instead of optimizing");
  oracle->add_option("-o,--output", report_path, "Report file (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "Run an experiment spec");
  std::string spec_path, out_dir;
  int jobs = 0;
  bench->add_option("--spec", spec_path, "Bench spec JSON")->required();
  bench->add_option("-o,--output", out_dir, "Output directory")->required();
  bench->add_option("--jobs", jobs, "Worker threads (default: spec value)");

  // profile
  auto* profile = app.add_subcommand("profile", "Performance profile from bench records");
  std::string profile_in, profile_out;
  profile->add_option("-i,--input", profile_in, "Bench output directory")->required();
  profile->add_option("-o,--output", profile_out, "Profile CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    error_line("usage", e.what());
    return kExitUsage;
  }

  try {
    if (*gen) {
      gcfg.flavor = parse_gen_flavor(flavor);
      save(generate(gcfg), out_path);
      return kExitOk;
    }
    if (*transform) {
      const auto inst = load(in_path);
      std::vector<NodePair> failed;
      for (const auto& f : fail_specs) failed.push_back(parse_pair(f));
      const auto net = remove_edges(inst.network, failed);
      const auto m = build_transformed_graph(net);
      const auto ds = derive_sets(net, m);
      emit(transform_report(net, m, ds, failed), report_path);
      return kExitOk;
    }
    if (*validate) {
      const auto inst = load(in_path);
      const int lambda = edge_connectivity(inst.network);
      const bool ok = lambda >= inst.gamma + 1;
      emit(validation_report(inst, ok, lambda), report_path);
      if (!ok) {
        error_line("connectivity", "network is not " + std::to_string(inst.gamma + 1) +
                                       "-edge-connected (edge connectivity " + std::to_string(lambda) + ")");
        return kExitFailure;
      }
      return kExitOk;
    }
    if (*solve) {
      const auto inst = load(in_path);
      const auto chosen_method = parse_method(method);
      if (!export_lp.empty()) {
        const auto m = build_transformed_graph(inst.network);
        const auto ds = derive_sets(inst.network, m);
        if (chosen_method == Method::CutBased) {
          milp::export_lp_file(build_ip_cb_base(inst, m, ds).model, export_lp);
        } else {
          milp::export_lp_file(build_ip_fb(inst, m, ds).model, export_lp);
        }
      }
      const auto outcome = solve_instance(inst, chosen_method, sopt);
      emit(solution_report(inst, outcome), report_path);
      return outcome.status == milp::SolveStatus::Infeasible ? kExitFailure : kExitOk;
    }
    if (*oracle) {
      const auto inst = load(in_path);
      const auto pred = predicate == "semantic" ? Predicate::Semantic : Predicate::Structural;
      if (!check.empty()) {
        const auto chosen = parse_nodes(check);
        bool ok = false;
        if (pred == Predicate::Semantic) {
          ok = feasible_semantic(inst, chosen);
        } else {
          const auto m = build_transformed_graph(inst.network);
          ok = feasible_structural(inst, m, derive_sets(inst.network, m), chosen);
        }
        emit(check_report(inst, pred, chosen, ok), report_path);
        return ok ? kExitOk : kExitFailure;
      }
      const auto best = brute_force_optimum(inst, pred);
      emit(oracle_report(inst, pred, best), report_path);
      return best ? kExitOk : kExitFailure;
    }
    if (*bench) {
      const auto spec = load_bench_spec(spec_path);
      const auto records = run_experiment(spec, std::filesystem::path(out_dir), jobs);
      std::cout << "wrote " << records.size() << " records to " << (std::filesystem::path(out_dir) / "records.csv").string()
                << '\n';
      return kExitOk;
    }
    if (*profile) {
      std::ifstream in(std::filesystem::path(profile_in) / "records.csv", std::ios::binary);
      if (!in) throw Error("io", "cannot open " + (std::filesystem::path(profile_in) / "records.csv").string());
      std::ostringstream buffer;
      buffer << in.rdbuf();
      const auto prof = performance_profile(records_from_csv(buffer.str()));
      emit(profile_to_csv(prof), profile_out);
      if (prof.excluded > 0) {
        std::cerr << prof.excluded << " instance(s) excluded: no method solved them\n";
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    error_line(e.code(), e.what());
    return exit_for(e);
  } catch (const std::exception& e) {
    error_line("internal", e.what());
    return kExitInternal;
  }
  return kExitUsage;
}
