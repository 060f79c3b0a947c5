#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "rftrlp/milp/model.hpp"

namespace rftrlp::milp {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit, TimeLimit };

const char* to_string(LpStatus status);

enum class VarStatus : std::uint8_t { Basic, AtLower, AtUpper };

struct LpOptions {
  double primal_tolerance = 1e-7;
  double dual_tolerance = 1e-7;
  double pivot_tolerance = 1e-9;
  /// Stand-in for infinite bounds of nonbasic variables. A solution resting on
  /// one with a nonzero reduced cost is reported as Unbounded.
  double artificial_bound = 1e7;
  int refactor_interval = 100;
  long iteration_limit = -1;  ///< -1 derives a limit from the problem size
};

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

/// Bounded dual simplex for  min c'x  s.t.  lo <= A x <= hi,  l <= x <= u.
///
/// Each row carries a logical variable s_i = -a_i x with bounds [-hi_i, -lo_i];
/// the slack basis is the starting point. Pricing uses dual Devex weights, the
/// ratio test flips boxed variables across breakpoints while the primal
/// infeasibility of the leaving row allows it. Rows and bound changes keep the
/// current basis, so re-solves after branching or cut addition warm start.
class LpSolver {
 public:
  LpSolver(std::vector<double> cost, std::vector<double> lower, std::vector<double> upper, LpOptions options = {});
  explicit LpSolver(const Model& model, LpOptions options = {});
  ~LpSolver();
  LpSolver(LpSolver&&) noexcept;
  LpSolver& operator=(LpSolver&&) noexcept;

  /// Appends lo <= sum(terms) <= hi; its logical enters the basis.
  int add_row(const std::vector<Term>& terms, double lower, double upper);
  void set_bounds(int col, double lower, double upper);
  double lower(int col) const;
  double upper(int col) const;

  LpStatus solve(Deadline deadline = std::nullopt);

  int cols() const;
  int rows() const;
  long iterations() const;
  double objective() const;
  std::vector<double> primal() const;
  std::vector<double> row_activity() const;
  /// Row multipliers y with c - A'y equal to the structural reduced costs;
  /// nonnegative on active lower row bounds, nonpositive on active upper ones.
  std::vector<double> duals() const;
  std::vector<double> reduced_costs() const;

  /// Status of every structural then every logical variable.
  std::vector<VarStatus> basis() const;
  /// Falls back to the slack basis when the count of basic entries is wrong
  /// or the matrix is singular on it.
  void set_basis(const std::vector<VarStatus>& statuses);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rftrlp::milp
