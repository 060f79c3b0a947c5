#include "rftrlp/iterative.hpp"

#include <chrono>
#include <cmath>

#include "formulation_common.hpp"
#include "rftrlp/error.hpp"
#include "rftrlp/formulation.hpp"

namespace rftrlp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

struct MasterOutcome {
  milp::SolveReport report;
  NodeSet chosen;
};

MasterOutcome run_master(const Instance& inst, const TransformedGraph& m, const DerivedSets& ds, const NodeSet& fixed,
                         double time_limit) {
  milp::Model model;
  const auto x = detail::add_node_vars(model, inst.network.node_count());
  const int z = detail::add_epigraph_var(model);
  detail::add_core_rows(model, inst, m, ds, x, z);
  for (NodeId v : fixed) model.set_bounds(x.at(static_cast<std::size_t>(v)), 1.0, 1.0);
  milp::SolveConfig cfg;
  cfg.time_limit = time_limit;
  cfg.integral_objective = true;
  MasterOutcome out{milp::solve(model, cfg), {}};
  if (!out.report.values.empty()) out.chosen = chosen_nodes(out.report.values, x);
  return out;
}

struct SubOutcome {
  milp::SolveReport report;
  NodeSet chosen;
};

SubOutcome run_subproblem(const Instance& inst, const TransformedGraph& m, const DerivedSets& ds,
                          const NodeSet& master_set, double time_limit) {
  auto fb = build_ip_fb(inst, m, ds);
  for (NodeId v : master_set) fb.model.set_bounds(fb.vars.x.at(static_cast<std::size_t>(v)), 1.0, 1.0);
  milp::SolveConfig cfg;
  cfg.time_limit = time_limit;
  cfg.integral_objective = true;
  SubOutcome out{milp::solve(fb.model, cfg), {}};
  if (!out.report.values.empty()) out.chosen = chosen_nodes(out.report.values, fb.vars.x);
  return out;
}

}  // namespace

bool IterationTrace::monotone() const {
  for (std::size_t t = 1; t < rounds.size(); ++t) {
    if (!rounds[t].free_master_set.is_subset_of(rounds[t - 1].free_master_set)) return false;
  }
  return true;
}

NodeSet solve_master(const Instance& inst, const TransformedGraph& m, const DerivedSets& ds, const NodeSet& fixed,
                     double time_limit) {
  auto out = run_master(inst, m, ds, fixed, time_limit);
  if (out.report.status == milp::SolveStatus::Infeasible) {
    throw InfeasibleInstanceError("no node set satisfies the domination and FRE rows with " + fixed.to_string() +
                                  " fixed");
  }
  if (out.report.status != milp::SolveStatus::Optimal) throw Error("time_limit", "master problem hit its time limit");
  return out.chosen;
}

NodeSet solve_subproblem(const Instance& inst, const TransformedGraph& m, const DerivedSets& ds,
                         const NodeSet& master_set, double time_limit) {
  if (master_set.empty()) throw ValidationError("subproblem needs a nonempty master set");
  auto out = run_subproblem(inst, m, ds, master_set, time_limit);
  if (out.report.status == milp::SolveStatus::Infeasible) {
    throw InfeasibleInstanceError("no connected extension of " + master_set.to_string() + " exists");
  }
  if (out.report.status != milp::SolveStatus::Optimal) throw Error("time_limit", "subproblem hit its time limit");
  return out.chosen.set_difference(master_set);
}

IterativeResult solve_it_fb(const Instance& inst, const TransformedGraph& m, const DerivedSets& ds,
                            double time_limit) {
  detail::require_connectivity(inst);
  const auto start = Clock::now();
  const int n = inst.network.node_count();
  IterativeResult result;
  NodeSet fixed;
  std::optional<NodeSet> previous;
  auto remaining = [&] { return std::max(1e-3, time_limit - seconds_since(start)); };

  for (int t = 1; t <= n; ++t) {
    RoundRecord rec;
    rec.round = t;
    auto t0 = Clock::now();
    auto master = run_master(inst, m, ds, fixed, remaining());
    rec.master_seconds = seconds_since(t0);
    result.nodes += master.report.nodes;
    result.lp_iterations += master.report.lp_iterations;
    if (master.report.status == milp::SolveStatus::Infeasible) {
      result.status = milp::SolveStatus::Infeasible;
      if (t > 1) result.diagnostics.push_back("master became infeasible after fixing " + fixed.to_string());
      return result;
    }
    if (master.report.status != milp::SolveStatus::Optimal) {
      result.status = milp::SolveStatus::TimeLimit;
      result.diagnostics.push_back("master problem of round " + std::to_string(t) + " hit the time limit");
      break;
    }
    rec.master_set = master.chosen;
    rec.free_master_set = master.chosen.set_difference(fixed);
    rec.master_objective = robust_cost(master.chosen, inst.scenarios).robust;

    t0 = Clock::now();
    auto sub = run_subproblem(inst, m, ds, master.chosen, remaining());
    rec.subproblem_seconds = seconds_since(t0);
    result.nodes += sub.report.nodes;
    result.lp_iterations += sub.report.lp_iterations;
    if (sub.report.status == milp::SolveStatus::Infeasible) {
      result.status = milp::SolveStatus::Infeasible;
      result.diagnostics.push_back("subproblem of round " + std::to_string(t) + " found no connected extension");
      result.trace.rounds.push_back(rec);
      return result;
    }
    if (sub.report.status != milp::SolveStatus::Optimal) {
      result.status = milp::SolveStatus::TimeLimit;
      result.diagnostics.push_back("subproblem of round " + std::to_string(t) + " hit the time limit");
      result.trace.rounds.push_back(rec);
      break;
    }
    rec.chosen = sub.chosen;
    rec.additions = sub.chosen.set_difference(master.chosen);
    rec.subproblem_objective = robust_cost(sub.chosen, inst.scenarios).robust;
    result.trace.rounds.push_back(rec);
    result.solution = make_solution(rec.chosen, inst.scenarios);

    if (rec.additions.empty() || (previous && *previous == rec.chosen)) {
      result.trace.converged = true;
      result.status = milp::SolveStatus::Optimal;
      return result;
    }
    fixed = fixed.set_union(rec.additions);
    previous = rec.chosen;
  }
  if (result.status != milp::SolveStatus::TimeLimit) {
    result.diagnostics.push_back("no convergence within " + std::to_string(n) + " rounds; returning the last combined set");
  }
  result.status = result.solution ? milp::SolveStatus::Feasible : milp::SolveStatus::TimeLimit;
  return result;
}

IterativeResult solve_it_fb(const Instance& inst, double time_limit) {
  const auto m = build_transformed_graph(inst.network);
  const auto ds = derive_sets(inst.network, m);
  return solve_it_fb(inst, m, ds, time_limit);
}

}  // namespace rftrlp
