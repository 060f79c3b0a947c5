#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rftrlp/instance.hpp"
#include "rftrlp/iterative.hpp"
#include "rftrlp/milp/branch_and_bound.hpp"
#include "rftrlp/oracle.hpp"

namespace rftrlp {

enum class Method { FlowBased, CutBased, Iterative };

std::string_view to_string(Method method);  ///< "fb", "cb", "it"
Method parse_method(std::string_view text);

struct SolverOptions {
  double time_limit = 3600.0;
  bool warm_start = false;   ///< seed FB with the degree-two preprocessing assignment
  bool lp_only = false;      ///< LP relaxation of FB or CB instead of the integer solve
  bool check_lazy_soundness = false;
  std::optional<long> node_limit;
};

struct PhaseTimings {
  double shp_s = 0.0;  ///< transformation and derived sets
  double ip_s = 0.0;   ///< model build and solve
};

struct SolveOutcome {
  Method method = Method::FlowBased;
  milp::SolveStatus status = milp::SolveStatus::TimeLimit;
  std::optional<Solution> solution;
  double objective = milp::kInf;  ///< model objective (LP value in lp_only mode)
  double bound = -milp::kInf;
  PhaseTimings timings;
  long nodes = 0;
  long cuts_added = 0;
  long lp_iterations = 0;
  bool lp_only = false;
  std::optional<IterationTrace> trace;  ///< Iterative only
  std::vector<std::string> diagnostics;
};

/// Transforms the network, builds the chosen model and solves it.
/// Throws ConnectivityError when the network is not (gamma+1)-edge-connected.
SolveOutcome solve_instance(const Instance& inst, Method method, const SolverOptions& options = {});

}  // namespace rftrlp
