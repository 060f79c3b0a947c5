#include "rftrlp/milp/branch_and_bound.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <queue>
#include <unordered_set>

#include "rftrlp/error.hpp"

namespace rftrlp::milp {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimeLimit: return "time_limit";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kIntTol = 1e-6;
constexpr double kPruneTol = 1e-6;

using Basis = std::vector<VarStatus>;

struct BoundChange {
  int var;
  double lower;
  double upper;
};

struct Node {
  double bound;
  int depth;
  long id;
  std::vector<BoundChange> changes;  // cumulative from the root
  std::shared_ptr<const Basis> basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    // priority_queue pops the "largest": invert for (bound asc, depth desc, id asc).
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

/// -1 when every integer variable is integral within tolerance.
int most_fractional(const Model& model, const std::vector<double>& values) {
  int best = -1;
  double best_distance = kIntTol;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!model.variables()[j].integer) continue;
    const double frac = values[j] - std::floor(values[j]);
    const double distance = std::min(frac, 1.0 - frac);
    if (distance > best_distance) {
      best_distance = distance;
      best = static_cast<int>(j);
    }
  }
  return best;
}

class Search {
 public:
  Search(const Model& model, const SolveConfig& config)
      : model_(model), config_(config), start_(Clock::now()), lp_(model, config.lp) {
    if (!(config.time_limit > 0.0)) throw ModelError("time_limit must be positive");
    deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(config.time_limit));
    for (const auto& v : model.variables()) {
      double lo = v.lower, hi = v.upper;
      if (v.integer && !config.relax_integrality) {
        lo = std::ceil(lo - kIntTol);
        hi = std::floor(hi + kIntTol);
      }
      root_lower_.push_back(lo);
      root_upper_.push_back(hi);
    }
    for (int j = 0; j < static_cast<int>(root_lower_.size()); ++j) {
      if (root_lower_[j] > root_upper_[j]) root_infeasible_ = true;
      else lp_.set_bounds(j, root_lower_[j], root_upper_[j]);
    }
    for (const auto& row : model.constraints()) names_.insert(row.name);
  }

  SolveReport run_milp();
  LpRelaxation run_relaxation();

 private:
  bool time_up() const { return Clock::now() > deadline_; }
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  /// True when the separator accepts the point; otherwise its rows were added.
  bool separate(const std::vector<double>& values);
  void add_lazy_row(Constraint row);
  void apply_changes(const std::vector<BoundChange>& changes);
  void try_warm_start();
  std::vector<double> rounded(std::vector<double> values) const;
  bool improves(double objective) const;
  Basis padded(const Basis& basis) const;

  const Model& model_;
  const SolveConfig& config_;
  Clock::time_point start_;
  Clock::time_point deadline_;
  LpSolver lp_;
  std::vector<double> root_lower_, root_upper_;
  bool root_infeasible_ = false;
  std::vector<BoundChange> applied_;
  std::unordered_set<std::string> names_;
  SolveReport report_;
  std::optional<std::vector<double>> incumbent_;
  double incumbent_obj_ = kInf;
};

std::vector<double> Search::rounded(std::vector<double> values) const {
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (model_.variables()[j].integer) values[j] = std::round(values[j]);
  }
  return values;
}

bool Search::improves(double objective) const { return objective < incumbent_obj_ - kPruneTol; }

Basis Search::padded(const Basis& basis) const {
  // Rows added after the snapshot enter with their logical basic.
  Basis out = basis;
  const auto want = static_cast<std::size_t>(lp_.cols() + lp_.rows());
  out.resize(want, VarStatus::Basic);
  return out;
}

void Search::add_lazy_row(Constraint row) {
  row = Model::normalized(std::move(row));
  if (row.name.empty() || names_.count(row.name)) {
    row.name = "lazy_" + std::to_string(report_.lazy_rows.size());
    while (names_.count(row.name)) row.name += "_";
  }
  names_.insert(row.name);
  switch (row.sense) {
    case Sense::LessEqual: lp_.add_row(row.terms, -kInf, row.rhs); break;
    case Sense::GreaterEqual: lp_.add_row(row.terms, row.rhs, kInf); break;
    case Sense::Equal: lp_.add_row(row.terms, row.rhs, row.rhs); break;
  }
  report_.lazy_rows.push_back(std::move(row));
  ++report_.cuts_added;
}

bool Search::separate(const std::vector<double>& values) {
  if (!config_.lazy_separator) return true;
  auto rows = config_.lazy_separator(rounded(values));
  if (rows.empty()) return true;
  for (auto& row : rows) {
    for (const auto& t : row.terms) {
      if (t.var < 0 || t.var >= static_cast<int>(model_.variable_count())) {
        throw ModelError("lazy row '" + row.name + "' references an unknown variable");
      }
    }
    if (config_.check_lazy_soundness && row.violation(rounded(values)) <= kPruneTol) {
      throw ModelError("lazy row '" + row.name + "' is not violated by the candidate that triggered it");
    }
    add_lazy_row(std::move(row));
  }
  return false;
}

void Search::apply_changes(const std::vector<BoundChange>& changes) {
  for (const auto& c : applied_) lp_.set_bounds(c.var, root_lower_[c.var], root_upper_[c.var]);
  for (const auto& c : changes) lp_.set_bounds(c.var, c.lower, c.upper);
  applied_ = changes;
}

void Search::try_warm_start() {
  const auto& ws = *config_.warm_start;
  std::vector<BoundChange> fixes;
  for (const auto& [name, value] : ws) {
    const auto index = model_.find_variable(name);
    std::string problem;
    if (!index) {
      problem = "unknown variable '" + name + "'";
    } else if (!std::isfinite(value)) {
      problem = "non-finite value for '" + name + "'";
    } else {
      const auto& v = model_.variable(*index);
      if (value < v.lower - kIntTol || value > v.upper + kIntTol) {
        problem = "value " + std::to_string(value) + " for '" + name + "' is outside its bounds";
      } else if (v.integer && std::abs(value - std::round(value)) > kIntTol) {
        problem = "value " + std::to_string(value) + " for integer '" + name + "' is fractional";
      }
    }
    if (!problem.empty()) {
      report_.diagnostics.push_back("warm start rejected: " + problem + "; solving without it");
      return;
    }
    const auto& v = model_.variable(*index);
    const double fixed = v.integer ? std::round(value) : value;
    fixes.push_back({*index, fixed, fixed});
  }

  // Dive: fix the given values, then round the most fractional variable to its
  // nearest integer until the LP point is integral or infeasible.
  std::vector<BoundChange> dive = fixes;
  apply_changes(dive);
  const std::size_t cap = model_.variable_count() + 64;
  for (std::size_t step = 0; step < cap; ++step) {
    if (time_up()) break;
    const auto status = lp_.solve(deadline_);
    if (status == LpStatus::Unbounded) throw ModelError("LP relaxation is unbounded");
    if (status != LpStatus::Optimal) {
      report_.diagnostics.push_back("warm start could not be completed to a feasible point");
      break;
    }
    const auto values = lp_.primal();
    const int branch = most_fractional(model_, values);
    if (branch < 0) {
      if (!separate(values)) continue;
      incumbent_ = rounded(values);
      incumbent_obj_ = lp_.objective();
      report_.warm_start_used = true;
      break;
    }
    const double target = std::floor(values[branch] + 0.5);
    dive.push_back({branch, target, target});
    apply_changes(dive);
  }
  apply_changes({});
}

SolveReport Search::run_milp() {
  if (root_infeasible_) {
    report_.status = SolveStatus::Infeasible;
    report_.wall_seconds = elapsed();
    return report_;
  }
  if (config_.warm_start) try_warm_start();

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push(Node{-kInf, 0, next_id++, {}, nullptr});
  std::shared_ptr<const Basis> current_basis;  // snapshot equal to the LP's basis, if any
  bool limit_hit = false;
  bool unresolved = false;
  double unresolved_bound = kInf;
  const double gap = config_.integral_objective ? 1.0 - kPruneTol : kPruneTol;

  while (!open.empty()) {
    if (time_up() || (config_.node_limit && report_.nodes >= *config_.node_limit)) {
      limit_hit = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (incumbent_ && node.bound >= incumbent_obj_ - gap) continue;
    ++report_.nodes;

    apply_changes(node.changes);
    if (node.basis && node.basis != current_basis) lp_.set_basis(padded(*node.basis));

    while (true) {
      const auto status = lp_.solve(deadline_);
      current_basis.reset();
      if (status == LpStatus::TimeLimit) {
        open.push(node);
        limit_hit = true;
        break;
      }
      if (status == LpStatus::Unbounded) throw ModelError("LP relaxation is unbounded");
      if (status == LpStatus::IterationLimit) {
        report_.diagnostics.push_back("LP iteration limit at node " + std::to_string(node.id) + "; node left unresolved");
        unresolved = true;
        unresolved_bound = std::min(unresolved_bound, node.bound);
        break;
      }
      if (status == LpStatus::Infeasible) break;
      const double value = lp_.objective();
      if (incumbent_ && value >= incumbent_obj_ - gap) break;
      const auto values = lp_.primal();
      const int branch = most_fractional(model_, values);
      if (branch < 0) {
        if (!separate(values)) continue;
        if (improves(value)) {
          incumbent_ = rounded(values);
          incumbent_obj_ = value;
        }
        break;
      }
      auto snapshot = std::make_shared<const Basis>(lp_.basis());
      current_basis = snapshot;
      const double v = values[branch];
      const double bound = std::max(value, node.bound);
      auto down = node.changes;
      down.push_back({branch, root_lower_[branch], std::floor(v)});
      auto up = std::move(node.changes);
      up.push_back({branch, std::ceil(v), root_upper_[branch]});
      // Tighten against earlier changes to the same variable.
      for (const auto& c : down) {
        if (c.var == branch) down.back().lower = std::max(down.back().lower, c.lower);
      }
      for (const auto& c : up) {
        if (c.var == branch) up.back().upper = std::min(up.back().upper, c.upper);
      }
      open.push(Node{bound, node.depth + 1, next_id++, std::move(down), snapshot});
      open.push(Node{bound, node.depth + 1, next_id++, std::move(up), snapshot});
      break;
    }
    if (limit_hit) break;
  }

  report_.lp_iterations = lp_.iterations();
  report_.wall_seconds = elapsed();
  double open_bound = unresolved ? unresolved_bound : kInf;
  if (!open.empty()) open_bound = std::min(open_bound, open.top().bound);
  if (incumbent_) {
    report_.values = *incumbent_;
    report_.objective = model_.objective_value(*incumbent_);
  }
  if (!limit_hit && !unresolved) {
    report_.status = incumbent_ ? SolveStatus::Optimal : SolveStatus::Infeasible;
    report_.bound = incumbent_ ? report_.objective : kInf;
  } else {
    report_.status = incumbent_ ? SolveStatus::Feasible : SolveStatus::TimeLimit;
    report_.bound = std::min(open_bound, incumbent_ ? report_.objective : kInf);
  }
  return report_;
}

LpRelaxation Search::run_relaxation() {
  LpRelaxation out;
  if (root_infeasible_) return out;
  while (true) {
    out.status = lp_.solve(deadline_);
    if (out.status == LpStatus::Unbounded) throw ModelError("LP relaxation is unbounded");
    if (out.status != LpStatus::Optimal) break;
    out.values = lp_.primal();
    out.objective = lp_.objective();
    if (most_fractional(model_, out.values) >= 0 || separate(out.values)) break;
  }
  out.iterations = lp_.iterations();
  out.cuts_added = report_.cuts_added;
  return out;
}

}  // namespace

SolveReport solve(const Model& model, const SolveConfig& config) {
  model.validate();
  if (config.relax_integrality) {
    const auto start = std::chrono::steady_clock::now();
    Search search(model, config);
    const auto lp = search.run_relaxation();
    SolveReport report;
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.lp_iterations = lp.iterations;
    report.cuts_added = lp.cuts_added;
    report.nodes = 1;
    if (lp.status == LpStatus::Optimal) {
      report.status = SolveStatus::Optimal;
      report.values = lp.values;
      report.objective = lp.objective;
      report.bound = lp.objective;
    } else if (lp.status == LpStatus::Infeasible) {
      report.status = SolveStatus::Infeasible;
      report.bound = kInf;
    } else {
      report.status = SolveStatus::TimeLimit;
    }
    return report;
  }
  Search search(model, config);
  return search.run_milp();
}

LpRelaxation solve_lp_relaxation(const Model& model, const SolveConfig& config) {
  model.validate();
  SolveConfig relaxed = config;
  relaxed.relax_integrality = true;
  Search search(model, relaxed);
  return search.run_relaxation();
}

}  // namespace rftrlp::milp
