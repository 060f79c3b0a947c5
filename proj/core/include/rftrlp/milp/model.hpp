#pragma once

#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace rftrlp::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  bool integer = false;
  double objective = 0.0;  ///< minimization coefficient
};

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Term {
  int var = 0;
  double coef = 0.0;

  bool operator==(const Term&) const = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;  ///< sorted by variable, no duplicates, no zeros
  Sense sense = Sense::GreaterEqual;
  double rhs = 0.0;

  double activity(const std::vector<double>& values) const;
  /// Amount by which `values` violates the row (0 when satisfied).
  double violation(const std::vector<double>& values) const;
};

/// Solver-neutral mixed-integer linear program, always a minimization.
class Model {
 public:
  int add_variable(std::string name, double lower, double upper, bool integer, double objective = 0.0);
  int add_binary(std::string name, double objective = 0.0) { return add_variable(std::move(name), 0.0, 1.0, true, objective); }
  int add_continuous(std::string name, double lower, double upper, double objective = 0.0) {
    return add_variable(std::move(name), lower, upper, false, objective);
  }

  /// Terms referring to the same variable are merged, zero coefficients dropped.
  int add_constraint(std::string name, std::vector<Term> terms, Sense sense, double rhs);
  int add_constraint(Constraint row);

  std::optional<int> find_variable(const std::string& name) const;

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  void set_bounds(int index, double lower, double upper);
  const Variable& variable(int index) const { return variables_.at(static_cast<std::size_t>(index)); }
  std::size_t variable_count() const { return variables_.size(); }
  std::size_t constraint_count() const { return constraints_.size(); }

  double objective_value(const std::vector<double>& values) const;
  /// Largest bound, row or integrality violation of `values`.
  double max_violation(const std::vector<double>& values) const;

  /// Throws ModelError on empty or duplicate names, inverted bounds, out-of-range
  /// variable references or non-finite coefficients.
  void validate() const;

  static Constraint normalized(Constraint row);

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::unordered_map<std::string, int> var_index_;
  std::unordered_map<std::string, int> row_index_;
};

}  // namespace rftrlp::milp
