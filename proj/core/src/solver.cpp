#include "rftrlp/solver.hpp"

#include <chrono>

#include "formulation_common.hpp"
#include "rftrlp/error.hpp"
#include "rftrlp/formulation.hpp"

namespace rftrlp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

void absorb(SolveOutcome& out, const milp::SolveReport& report, const std::vector<int>& x, const Instance& inst) {
  out.status = report.status;
  out.objective = report.objective;
  out.bound = report.bound;
  out.nodes = report.nodes;
  out.cuts_added = report.cuts_added;
  out.lp_iterations = report.lp_iterations;
  out.diagnostics.insert(out.diagnostics.end(), report.diagnostics.begin(), report.diagnostics.end());
  if (!out.lp_only && !report.values.empty()) {
    out.solution = make_solution(chosen_nodes(report.values, x), inst.scenarios);
    // Costs are integral, so the exact robust cost replaces the floating z.
    out.objective = static_cast<double>(out.solution->robust_cost);
    if (out.status == milp::SolveStatus::Optimal) out.bound = out.objective;
  }
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::FlowBased: return "fb";
    case Method::CutBased: return "cb";
    case Method::Iterative: return "it";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  if (text == "fb") return Method::FlowBased;
  if (text == "cb") return Method::CutBased;
  if (text == "it") return Method::Iterative;
  throw ValidationError("unknown method '" + std::string(text) + "' (expected fb, cb or it)");
}

SolveOutcome solve_instance(const Instance& inst, Method method, const SolverOptions& options) {
  detail::require_connectivity(inst);
  SolveOutcome out;
  out.method = method;
  out.lp_only = options.lp_only;

  auto t0 = Clock::now();
  const auto m = build_transformed_graph(inst.network);
  const auto ds = derive_sets(inst.network, m);
  out.timings.shp_s = seconds_since(t0);

  t0 = Clock::now();
  milp::SolveConfig cfg;
  cfg.time_limit = options.time_limit;
  cfg.relax_integrality = options.lp_only;
  cfg.node_limit = options.node_limit;
  cfg.check_lazy_soundness = options.check_lazy_soundness;
  cfg.integral_objective = true;

  switch (method) {
    case Method::FlowBased: {
      auto fb = build_ip_fb(inst, m, ds);
      if (options.warm_start) cfg.warm_start = warm_start_from_preprocessing(ds);
      absorb(out, milp::solve(fb.model, cfg), fb.vars.x, inst);
      break;
    }
    case Method::CutBased: {
      auto cb = build_ip_cb_base(inst, m, ds);
      CutRegistry registry;
      cfg.lazy_separator = [&](const std::vector<double>& values) {
        std::vector<milp::Constraint> rows;
        for (auto& cut : separate_cuts(values, inst, m, cb.vars, registry)) {
          rows.push_back(cut.row);
          cb.vars.generated_cuts.push_back(std::move(cut));
        }
        return rows;
      };
      if (options.warm_start) cfg.warm_start = warm_start_from_preprocessing(ds);
      absorb(out, milp::solve(cb.model, cfg), cb.vars.x, inst);
      break;
    }
    case Method::Iterative: {
      if (options.lp_only) throw ValidationError("the iterative method has no LP-only mode");
      auto it = solve_it_fb(inst, m, ds, options.time_limit);
      out.status = it.status;
      out.solution = it.solution;
      out.nodes = it.nodes;
      out.lp_iterations = it.lp_iterations;
      out.trace = std::move(it.trace);
      out.diagnostics = std::move(it.diagnostics);
      if (out.solution) {
        out.objective = static_cast<double>(out.solution->robust_cost);
        if (out.status == milp::SolveStatus::Optimal) out.bound = out.objective;
      } else if (out.status == milp::SolveStatus::Infeasible) {
        out.bound = milp::kInf;
      }
      break;
    }
  }
  out.timings.ip_s = seconds_since(t0);
  return out;
}

}  // namespace rftrlp
