#include "rftrlp/milp/model.hpp"

#include <algorithm>
#include <cmath>

#include "rftrlp/error.hpp"

namespace rftrlp::milp {

double Constraint::activity(const std::vector<double>& values) const {
  double sum = 0.0;
  for (const auto& t : terms) sum += t.coef * values.at(static_cast<std::size_t>(t.var));
  return sum;
}

double Constraint::violation(const std::vector<double>& values) const {
  const double lhs = activity(values);
  switch (sense) {
    case Sense::LessEqual: return std::max(0.0, lhs - rhs);
    case Sense::GreaterEqual: return std::max(0.0, rhs - lhs);
    case Sense::Equal: return std::abs(lhs - rhs);
  }
  return 0.0;
}

Constraint Model::normalized(Constraint row) {
  std::sort(row.terms.begin(), row.terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  for (const auto& t : row.terms) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  row.terms = std::move(merged);
  return row;
}

int Model::add_variable(std::string name, double lower, double upper, bool integer, double objective) {
  if (name.empty()) throw ModelError("variable name must not be empty");
  if (lower > upper) throw ModelError("variable '" + name + "' has lower bound above upper bound");
  if (std::isnan(lower) || std::isnan(upper) || !std::isfinite(objective)) {
    throw ModelError("variable '" + name + "' has a non-finite bound or objective");
  }
  const int index = static_cast<int>(variables_.size());
  if (!var_index_.emplace(name, index).second) throw ModelError("duplicate variable name '" + name + "'");
  variables_.push_back({std::move(name), lower, upper, integer, objective});
  return index;
}

int Model::add_constraint(std::string name, std::vector<Term> terms, Sense sense, double rhs) {
  return add_constraint(Constraint{std::move(name), std::move(terms), sense, rhs});
}

int Model::add_constraint(Constraint row) {
  if (row.name.empty()) throw ModelError("constraint name must not be empty");
  if (!std::isfinite(row.rhs)) throw ModelError("constraint '" + row.name + "' has a non-finite right-hand side");
  for (const auto& t : row.terms) {
    if (t.var < 0 || static_cast<std::size_t>(t.var) >= variables_.size()) {
      throw ModelError("constraint '" + row.name + "' references undeclared variable " + std::to_string(t.var));
    }
    if (!std::isfinite(t.coef)) throw ModelError("constraint '" + row.name + "' has a non-finite coefficient");
  }
  const int index = static_cast<int>(constraints_.size());
  if (!row_index_.emplace(row.name, index).second) throw ModelError("duplicate constraint name '" + row.name + "'");
  constraints_.push_back(normalized(std::move(row)));
  return index;
}

void Model::set_bounds(int index, double lower, double upper) {
  auto& v = variables_.at(static_cast<std::size_t>(index));
  if (lower > upper) throw ModelError("variable '" + v.name + "' would get lower bound above upper bound");
  v.lower = lower;
  v.upper = upper;
}

std::optional<int> Model::find_variable(const std::string& name) const {
  auto it = var_index_.find(name);
  if (it == var_index_.end()) return std::nullopt;
  return it->second;
}

double Model::objective_value(const std::vector<double>& values) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < variables_.size(); ++j) sum += variables_[j].objective * values.at(j);
  return sum;
}

double Model::max_violation(const std::vector<double>& values) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    const auto& v = variables_[j];
    const double x = values.at(j);
    worst = std::max({worst, v.lower - x, x - v.upper});
    if (v.integer) worst = std::max(worst, std::abs(x - std::round(x)));
  }
  for (const auto& row : constraints_) worst = std::max(worst, row.violation(values));
  return worst;
}

void Model::validate() const {
  std::unordered_map<std::string, int> seen;
  for (const auto& v : variables_) {
    if (v.name.empty()) throw ModelError("variable name must not be empty");
    if (!seen.emplace(v.name, 0).second) throw ModelError("duplicate variable name '" + v.name + "'");
    if (v.lower > v.upper) throw ModelError("variable '" + v.name + "' has lower bound above upper bound");
  }
  seen.clear();
  for (const auto& row : constraints_) {
    if (!seen.emplace(row.name, 0).second) throw ModelError("duplicate constraint name '" + row.name + "'");
    for (const auto& t : row.terms) {
      if (t.var < 0 || static_cast<std::size_t>(t.var) >= variables_.size()) {
        throw ModelError("constraint '" + row.name + "' references undeclared variable");
      }
    }
  }
}

}  // namespace rftrlp::milp
