#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rftrlp/graph.hpp"
#include "rftrlp/instance.hpp"
#include "rftrlp/milp/branch_and_bound.hpp"
#include "rftrlp/oracle.hpp"

namespace rftrlp {

struct RoundRecord {
  int round = 0;                  ///< t, starting at 1
  NodeSet master_set;             ///< full master choice (fixed nodes included)
  NodeSet free_master_set;        ///< L^t: master choice minus the nodes fixed before round t
  NodeSet additions;              ///< K^t: subproblem choice minus master_set
  NodeSet chosen;                 ///< master_set ∪ additions
  Cost master_objective = 0;
  Cost subproblem_objective = 0;
  double master_seconds = 0.0;
  double subproblem_seconds = 0.0;
};

struct IterationTrace {
  std::vector<RoundRecord> rounds;
  bool converged = false;

  /// L^{t+1} ⊆ L^t for every t >= 1.
  bool monotone() const;
};

/// Minimum robust cost set meeting domination and FRE with every node of
/// `fixed` forced in. Throws InfeasibleInstanceError when no such set exists.
NodeSet solve_master(const Instance& inst, const TransformedGraph& m, const DerivedSets& ds, const NodeSet& fixed,
                     double time_limit = 3600.0);

/// Flow-based model with `master_set` forced in; returns the added nodes.
NodeSet solve_subproblem(const Instance& inst, const TransformedGraph& m, const DerivedSets& ds,
                         const NodeSet& master_set, double time_limit = 3600.0);

struct IterativeResult {
  milp::SolveStatus status = milp::SolveStatus::TimeLimit;
  std::optional<Solution> solution;
  IterationTrace trace;
  std::vector<std::string> diagnostics;
  long nodes = 0;
  long lp_iterations = 0;
};

/// Master/subproblem loop: each round solves the master with every earlier
/// addition fixed, extends its choice with the subproblem and stops when the
/// combined set repeats or the subproblem adds nothing. After n rounds without
/// that, the last combined set is returned with status Feasible and a
/// nonconvergence diagnostic.
IterativeResult solve_it_fb(const Instance& inst, const TransformedGraph& m, const DerivedSets& ds,
                            double time_limit = 3600.0);
IterativeResult solve_it_fb(const Instance& inst, double time_limit = 3600.0);

}  // namespace rftrlp
