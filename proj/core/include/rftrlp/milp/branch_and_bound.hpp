#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rftrlp/milp/lp_solver.hpp"
#include "rftrlp/milp/model.hpp"

namespace rftrlp::milp {

enum class SolveStatus { Optimal, Feasible, Infeasible, TimeLimit };

const char* to_string(SolveStatus status);

/// Values keyed by variable name; variables not listed are left free.
using PartialAssignment = std::map<std::string, double>;

/// Called with an integer-feasible LP solution (indexed like the model's
/// variables). Returns the rows it violates; an empty list accepts the point.
using LazySeparator = std::function<std::vector<Constraint>(const std::vector<double>& values)>;

struct SolveConfig {
  double time_limit = 3600.0;  ///< seconds, must be positive
  std::optional<PartialAssignment> warm_start;
  LazySeparator lazy_separator;
  bool relax_integrality = false;
  std::optional<long> node_limit;
  /// Verify that every separator row is violated by its trigger point.
  bool check_lazy_soundness = false;
  /// Every integer-feasible solution has an integral optimal objective, so a
  /// node whose bound exceeds incumbent - 1 cannot improve it.
  bool integral_objective = false;
  LpOptions lp;
};

struct SolveReport {
  SolveStatus status = SolveStatus::TimeLimit;
  std::vector<double> values;  ///< incumbent (or LP point in relaxation mode); empty if none
  double objective = kInf;
  double bound = -kInf;
  double wall_seconds = 0.0;
  long nodes = 0;
  long cuts_added = 0;
  long lp_iterations = 0;
  bool warm_start_used = false;
  std::vector<std::string> diagnostics;
  std::vector<Constraint> lazy_rows;  ///< separator rows in the order they were added
};

/// Best-first branch and bound with LP bounding (dual simplex warm-started
/// from the parent basis). Nodes are ordered by (bound, deeper first, creation
/// order); the branching variable is the most fractional integer variable,
/// lowest index on ties, with integrality tolerance 1e-6. Lazy rows join the
/// global LP and stay for the rest of the solve.
///
/// Status: Optimal when the tree is exhausted with an incumbent, Infeasible
/// when it is exhausted without one; on a time or node limit, Feasible when an
/// incumbent exists and TimeLimit otherwise. An unbounded relaxation raises
/// ModelError. A warm start naming unknown variables, violating bounds or
/// integrality is rejected with a diagnostic and the solve proceeds cold;
/// otherwise it is completed by an LP dive into a starting incumbent.
SolveReport solve(const Model& model, const SolveConfig& config = {});

struct LpRelaxation {
  LpStatus status = LpStatus::Infeasible;
  double objective = kInf;
  std::vector<double> values;
  long iterations = 0;
  long cuts_added = 0;
};

/// Same constraint system without integrality. A lazy separator in `config` is
/// still consulted whenever the LP point happens to be integral.
LpRelaxation solve_lp_relaxation(const Model& model, const SolveConfig& config = {});

}  // namespace rftrlp::milp
