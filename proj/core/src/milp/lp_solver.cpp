#include "rftrlp/milp/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "milp/basis_factor.hpp"
#include "rftrlp/error.hpp"

namespace rftrlp::milp {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
    case LpStatus::TimeLimit: return "time_limit";
  }
  return "unknown";
}

struct LpSolver::Impl {
  LpOptions opt;
  int n = 0;  // structurals
  int m = 0;  // rows
  std::vector<double> cost, lo, hi, wlo, whi;
  std::vector<char> art_lo, art_hi;
  std::vector<std::vector<Term>> row_terms;
  detail::CscMatrix csc;
  std::vector<int> csr_start, csr_index;
  std::vector<double> csr_value;
  std::vector<VarStatus> status;
  std::vector<int> head, pos;
  std::vector<double> x, d, w;
  detail::BasisFactor factor;
  bool matrices_dirty = true;
  bool factor_dirty = true;
  bool primal_dirty = true;
  long iterations = 0;

  // scratch
  std::vector<double> rho, column, alpha, work;
  std::vector<int> touched;
  std::vector<char> is_touched;

  int total() const { return n + m; }

  void set_working_bounds(int j) {
    const auto u = static_cast<std::size_t>(j);
    art_lo[u] = !std::isfinite(lo[u]);
    art_hi[u] = !std::isfinite(hi[u]);
    wlo[u] = art_lo[u] ? std::min(-opt.artificial_bound, art_hi[u] ? -opt.artificial_bound : hi[u]) : lo[u];
    whi[u] = art_hi[u] ? std::max(opt.artificial_bound, wlo[u]) : hi[u];
  }

  void place_nonbasic(int j) {
    const auto u = static_cast<std::size_t>(j);
    if (status[u] == VarStatus::Basic) return;
    if (wlo[u] == whi[u]) status[u] = VarStatus::AtLower;
    x[u] = status[u] == VarStatus::AtLower ? wlo[u] : whi[u];
  }

  void init_columns(std::vector<double> c, std::vector<double> l, std::vector<double> h) {
    if (c.size() != l.size() || c.size() != h.size()) throw ModelError("LP column data sizes differ");
    n = static_cast<int>(c.size());
    m = 0;
    cost = std::move(c);
    lo = std::move(l);
    hi = std::move(h);
    wlo.resize(cost.size());
    whi.resize(cost.size());
    art_lo.resize(cost.size());
    art_hi.resize(cost.size());
    status.assign(cost.size(), VarStatus::AtLower);
    pos.assign(cost.size(), -1);
    x.assign(cost.size(), 0.0);
    d = cost;
    for (int j = 0; j < n; ++j) {
      if (lo[j] > hi[j]) throw ModelError("LP column " + std::to_string(j) + " has inverted bounds");
      set_working_bounds(j);
      status[j] = cost[j] >= 0.0 ? VarStatus::AtLower : VarStatus::AtUpper;
      place_nonbasic(j);
    }
  }

  int add_row(const std::vector<Term>& terms, double l, double h) {
    if (l > h) throw ModelError("LP row has inverted bounds");
    const int i = m++;
    std::vector<Term> row;
    for (const auto& t : terms) {
      if (t.var < 0 || t.var >= n) throw ModelError("LP row references unknown column");
      if (t.coef != 0.0) row.push_back(t);
    }
    row_terms.push_back(std::move(row));
    cost.push_back(0.0);
    lo.push_back(-h);
    hi.push_back(-l);
    wlo.push_back(0.0);
    whi.push_back(0.0);
    art_lo.push_back(0);
    art_hi.push_back(0);
    status.push_back(VarStatus::Basic);
    pos.push_back(static_cast<int>(head.size()));
    head.push_back(n + i);
    x.push_back(0.0);
    d.push_back(0.0);
    w.push_back(1.0);
    set_working_bounds(n + i);
    matrices_dirty = factor_dirty = primal_dirty = true;
    return i;
  }

  void build_matrices() {
    csc.rows = m;
    csc.cols = n;
    csc.start.assign(static_cast<std::size_t>(n) + 1, 0);
    csr_start.assign(static_cast<std::size_t>(m) + 1, 0);
    for (int i = 0; i < m; ++i) {
      csr_start[i + 1] = csr_start[i] + static_cast<int>(row_terms[i].size());
      for (const auto& t : row_terms[i]) ++csc.start[t.var + 1];
    }
    for (int j = 0; j < n; ++j) csc.start[j + 1] += csc.start[j];
    const auto nnz = static_cast<std::size_t>(csr_start[m]);
    csc.index.resize(nnz);
    csc.value.resize(nnz);
    csr_index.resize(nnz);
    csr_value.resize(nnz);
    std::vector<int> fill(csc.start.begin(), csc.start.end() - 1);
    for (int i = 0; i < m; ++i) {
      int p = csr_start[i];
      for (const auto& t : row_terms[i]) {
        csr_index[p] = t.var;
        csr_value[p] = t.coef;
        ++p;
        const int q = fill[t.var]++;
        csc.index[q] = i;
        csc.value[q] = t.coef;
      }
    }
    rho.assign(static_cast<std::size_t>(m), 0.0);
    column.assign(static_cast<std::size_t>(m), 0.0);
    work.assign(static_cast<std::size_t>(m), 0.0);
    alpha.assign(static_cast<std::size_t>(total()), 0.0);
    is_touched.assign(static_cast<std::size_t>(total()), 0);
    matrices_dirty = false;
  }

  void slack_basis() {
    head.resize(static_cast<std::size_t>(m));
    std::fill(pos.begin(), pos.end(), -1);
    for (int j = 0; j < n; ++j) {
      if (status[j] == VarStatus::Basic) {
        status[j] = d[j] >= 0.0 ? VarStatus::AtLower : VarStatus::AtUpper;
        place_nonbasic(j);
      }
    }
    for (int i = 0; i < m; ++i) {
      status[n + i] = VarStatus::Basic;
      head[i] = n + i;
      pos[n + i] = i;
    }
    std::fill(w.begin(), w.end(), 1.0);
  }

  void refactor() {
    if (matrices_dirty) build_matrices();
    if (!factor.factor(csc, head)) {
      slack_basis();
      factor.factor(csc, head);
    }
    factor_dirty = false;
    recompute_primal();
    recompute_duals();
    fix_dual_infeasibilities();
  }

  void recompute_primal() {
    std::fill(work.begin(), work.end(), 0.0);
    for (int j = 0; j < n; ++j) {
      if (status[j] == VarStatus::Basic) continue;
      place_nonbasic(j);
      const double v = x[j];
      if (v == 0.0) continue;
      for (int p = csc.start[j]; p < csc.start[j + 1]; ++p) work[csc.index[p]] -= csc.value[p] * v;
    }
    for (int i = 0; i < m; ++i) {
      if (status[n + i] == VarStatus::Basic) continue;
      place_nonbasic(n + i);
      work[i] -= x[n + i];
    }
    factor.ftran(work);
    for (int s = 0; s < m; ++s) x[head[s]] = work[s];
    primal_dirty = false;
  }

  void recompute_duals() {
    for (int s = 0; s < m; ++s) work[s] = cost[head[s]];
    factor.btran(work);  // now y in row space
    for (int j = 0; j < n; ++j) {
      if (status[j] == VarStatus::Basic) {
        d[j] = 0.0;
        continue;
      }
      double v = cost[j];
      for (int p = csc.start[j]; p < csc.start[j + 1]; ++p) v -= csc.value[p] * work[csc.index[p]];
      d[j] = v;
    }
    for (int i = 0; i < m; ++i) d[n + i] = status[n + i] == VarStatus::Basic ? 0.0 : -work[i];
  }

  void fix_dual_infeasibilities() {
    bool flipped = false;
    for (int j = 0; j < total(); ++j) {
      if (status[j] == VarStatus::Basic || wlo[j] == whi[j]) continue;
      if (status[j] == VarStatus::AtLower && d[j] < -opt.dual_tolerance) {
        status[j] = VarStatus::AtUpper;
        flipped = true;
      } else if (status[j] == VarStatus::AtUpper && d[j] > opt.dual_tolerance) {
        status[j] = VarStatus::AtLower;
        flipped = true;
      }
    }
    if (flipped) recompute_primal();
  }

  void prepare() {
    if (matrices_dirty || factor_dirty || !factor.valid()) {
      refactor();
    } else if (primal_dirty) {
      recompute_primal();
    }
  }

  int price() const {
    int best = -1;
    double best_score = 0.0;
    for (int s = 0; s < m; ++s) {
      const int v = head[s];
      double infeasibility = 0.0;
      if (x[v] < wlo[v] - opt.primal_tolerance) {
        infeasibility = wlo[v] - x[v];
      } else if (x[v] > whi[v] + opt.primal_tolerance) {
        infeasibility = x[v] - whi[v];
      } else {
        continue;
      }
      const double score = infeasibility * infeasibility / w[s];
      if (score > best_score) {
        best_score = score;
        best = s;
      }
    }
    return best;
  }

  void load_column(int q, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    if (q < n) {
      for (int p = csc.start[q]; p < csc.start[q + 1]; ++p) out[csc.index[p]] = csc.value[p];
    } else {
      out[q - n] = 1.0;
    }
  }

  void compute_pivot_row() {
    for (int j : touched) {
      alpha[j] = 0.0;
      is_touched[j] = 0;
    }
    touched.clear();
    for (int i = 0; i < m; ++i) {
      const double r = rho[i];
      if (std::abs(r) < 1e-14) continue;
      for (int p = csr_start[i]; p < csr_start[i + 1]; ++p) {
        const int j = csr_index[p];
        if (status[j] == VarStatus::Basic) continue;
        if (!is_touched[j]) {
          is_touched[j] = 1;
          touched.push_back(j);
        }
        alpha[j] += r * csr_value[p];
      }
      const int logical = n + i;
      if (status[logical] != VarStatus::Basic) {
        is_touched[logical] = 1;
        touched.push_back(logical);
        alpha[logical] = r;
      }
    }
  }

  bool at_artificial(int j) const {
    return (status[j] == VarStatus::AtLower && art_lo[j]) || (status[j] == VarStatus::AtUpper && art_hi[j]);
  }

  LpStatus run(Deadline deadline) {
    prepare();
    const long limit = opt.iteration_limit >= 0 ? opt.iteration_limit : 50L * (n + m) + 10000;
    long local = 0;
    bool fresh = true;  // no pivots since the last refactor
    struct Candidate {
      int var;
      double ratio;
      double abs_alpha;
    };
    std::vector<Candidate> candidates;
    std::vector<int> flips;

    while (true) {
      if (deadline && (local & 31) == 0 && std::chrono::steady_clock::now() > *deadline) return LpStatus::TimeLimit;
      if (local >= limit) return LpStatus::IterationLimit;
      if (factor.eta_count() >= opt.refactor_interval) {
        refactor();
        fresh = true;
      }

      const int r = price();
      if (r < 0) {
        if (!fresh) {
          refactor();
          fresh = true;
          continue;
        }
        for (int j = 0; j < total(); ++j) {
          if (status[j] != VarStatus::Basic && at_artificial(j) && std::abs(d[j]) > opt.dual_tolerance) {
            return LpStatus::Unbounded;
          }
        }
        return LpStatus::Optimal;
      }

      const int p = head[r];
      const bool below = x[p] < wlo[p];
      const double s = below ? 1.0 : -1.0;
      double slope = below ? wlo[p] - x[p] : x[p] - whi[p];

      std::fill(rho.begin(), rho.end(), 0.0);
      rho[r] = 1.0;
      factor.btran(rho);
      compute_pivot_row();

      candidates.clear();
      for (int j : touched) {
        const double a = alpha[j];
        if (std::abs(a) < opt.pivot_tolerance || wlo[j] == whi[j]) continue;
        const double sa = s * a;
        const bool lower_side = status[j] == VarStatus::AtLower;
        if ((lower_side && sa < 0.0) || (!lower_side && sa > 0.0)) {
          const double dj = lower_side ? d[j] : -d[j];
          candidates.push_back({j, std::max(dj, 0.0) / std::abs(a), std::abs(a)});
        }
      }
      std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return a.ratio != b.ratio ? a.ratio < b.ratio : a.var < b.var;
      });

      flips.clear();
      int q = -1;
      double step = 0.0;
      for (std::size_t g = 0; g < candidates.size();) {
        std::size_t end = g;
        const double group_ratio = candidates[g].ratio;
        double capacity = 0.0;
        while (end < candidates.size() && candidates[end].ratio <= group_ratio + 1e-12) {
          const int j = candidates[end].var;
          capacity += candidates[end].abs_alpha * (whi[j] - wlo[j]);
          ++end;
        }
        if (slope - capacity > opt.primal_tolerance) {
          for (std::size_t k = g; k < end; ++k) flips.push_back(candidates[k].var);
          slope -= capacity;
          g = end;
          continue;
        }
        std::size_t pick = g;
        for (std::size_t k = g + 1; k < end; ++k) {
          if (candidates[k].abs_alpha > candidates[pick].abs_alpha) pick = k;
        }
        q = candidates[pick].var;
        step = candidates[pick].ratio;
        break;
      }
      if (q < 0) {
        if (!fresh) {
          refactor();
          fresh = true;
          continue;
        }
        return LpStatus::Infeasible;
      }

      load_column(q, column);
      factor.ftran(column);
      const double pivot = column[r];
      if (std::abs(pivot) < 1e-11 ||
          std::abs(pivot - alpha[q]) > 1e-7 * std::max(1.0, std::abs(pivot))) {
        if (!fresh) {
          refactor();
          fresh = true;
          continue;
        }
        if (std::abs(pivot) < 1e-11) return LpStatus::IterationLimit;
      }

      // Dual step.
      const double theta_d = -s * step;
      for (int j : touched) {
        if (status[j] != VarStatus::Basic) d[j] -= theta_d * alpha[j];
      }
      d[p] = -theta_d;
      d[q] = 0.0;

      // Bound flips collected by the ratio test.
      if (!flips.empty()) {
        std::fill(work.begin(), work.end(), 0.0);
        for (int j : flips) {
          const double old = x[j];
          status[j] = status[j] == VarStatus::AtLower ? VarStatus::AtUpper : VarStatus::AtLower;
          x[j] = status[j] == VarStatus::AtLower ? wlo[j] : whi[j];
          const double delta = x[j] - old;
          if (j < n) {
            for (int k = csc.start[j]; k < csc.start[j + 1]; ++k) work[csc.index[k]] -= csc.value[k] * delta;
          } else {
            work[j - n] -= delta;
          }
        }
        factor.ftran(work);
        for (int k = 0; k < m; ++k) x[head[k]] += work[k];
      }

      // Primal step: the leaving variable lands on its violated bound.
      const double target = below ? wlo[p] : whi[p];
      const double theta_p = (x[p] - target) / pivot;
      for (int k = 0; k < m; ++k) {
        if (column[k] != 0.0) x[head[k]] -= theta_p * column[k];
      }
      x[q] += theta_p;
      x[p] = target;

      status[p] = below || wlo[p] == whi[p] ? VarStatus::AtLower : VarStatus::AtUpper;
      status[q] = VarStatus::Basic;
      head[r] = q;
      pos[q] = r;
      pos[p] = -1;

      const double wr = w[r];
      for (int k = 0; k < m; ++k) {
        if (k == r || column[k] == 0.0) continue;
        const double ratio = column[k] / pivot;
        w[k] = std::max(w[k], ratio * ratio * wr);
      }
      w[r] = std::max(wr / (pivot * pivot), 1.0);

      factor.add_eta(r, column);
      ++iterations;
      ++local;
      fresh = false;
    }
  }
};

LpSolver::LpSolver(std::vector<double> cost, std::vector<double> lower, std::vector<double> upper, LpOptions options)
    : impl_(std::make_unique<Impl>()) {
  impl_->opt = options;
  impl_->init_columns(std::move(cost), std::move(lower), std::move(upper));
}

LpSolver::LpSolver(const Model& model, LpOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->opt = options;
  std::vector<double> c, l, u;
  for (const auto& v : model.variables()) {
    c.push_back(v.objective);
    l.push_back(v.lower);
    u.push_back(v.upper);
  }
  impl_->init_columns(std::move(c), std::move(l), std::move(u));
  for (const auto& row : model.constraints()) {
    switch (row.sense) {
      case Sense::LessEqual: impl_->add_row(row.terms, -kInf, row.rhs); break;
      case Sense::GreaterEqual: impl_->add_row(row.terms, row.rhs, kInf); break;
      case Sense::Equal: impl_->add_row(row.terms, row.rhs, row.rhs); break;
    }
  }
}

LpSolver::~LpSolver() = default;
LpSolver::LpSolver(LpSolver&&) noexcept = default;
LpSolver& LpSolver::operator=(LpSolver&&) noexcept = default;

int LpSolver::add_row(const std::vector<Term>& terms, double lower, double upper) {
  return impl_->add_row(terms, lower, upper);
}

void LpSolver::set_bounds(int col, double lower, double upper) {
  auto& s = *impl_;
  if (col < 0 || col >= s.n) throw ModelError("set_bounds: column out of range");
  if (lower > upper) throw ModelError("set_bounds: inverted bounds");
  if (s.lo[col] == lower && s.hi[col] == upper) return;
  s.lo[col] = lower;
  s.hi[col] = upper;
  s.set_working_bounds(col);
  if (s.status[col] != VarStatus::Basic) {
    // Keep the side that matches the reduced cost sign.
    if (s.wlo[col] != s.whi[col]) {
      if (s.d[col] > s.opt.dual_tolerance) s.status[col] = VarStatus::AtLower;
      else if (s.d[col] < -s.opt.dual_tolerance) s.status[col] = VarStatus::AtUpper;
    }
    s.place_nonbasic(col);
  }
  s.primal_dirty = true;
}

double LpSolver::lower(int col) const { return impl_->lo.at(static_cast<std::size_t>(col)); }
double LpSolver::upper(int col) const { return impl_->hi.at(static_cast<std::size_t>(col)); }

LpStatus LpSolver::solve(Deadline deadline) { return impl_->run(deadline); }

int LpSolver::cols() const { return impl_->n; }
int LpSolver::rows() const { return impl_->m; }
long LpSolver::iterations() const { return impl_->iterations; }

double LpSolver::objective() const {
  double sum = 0.0;
  for (int j = 0; j < impl_->n; ++j) sum += impl_->cost[j] * impl_->x[j];
  return sum;
}

std::vector<double> LpSolver::primal() const { return {impl_->x.begin(), impl_->x.begin() + impl_->n}; }

std::vector<double> LpSolver::row_activity() const {
  std::vector<double> out(static_cast<std::size_t>(impl_->m));
  for (int i = 0; i < impl_->m; ++i) out[i] = -impl_->x[impl_->n + i];
  return out;
}

std::vector<double> LpSolver::duals() const {
  std::vector<double> out(static_cast<std::size_t>(impl_->m));
  for (int i = 0; i < impl_->m; ++i) out[i] = -impl_->d[impl_->n + i];
  // Basic logicals have zero reduced cost, so their multiplier is zero as well.
  return out;
}

std::vector<double> LpSolver::reduced_costs() const { return {impl_->d.begin(), impl_->d.begin() + impl_->n}; }

std::vector<VarStatus> LpSolver::basis() const { return impl_->status; }

void LpSolver::set_basis(const std::vector<VarStatus>& statuses) {
  auto& s = *impl_;
  const auto count = static_cast<std::size_t>(s.total());
  std::vector<int> head;
  if (statuses.size() == count) {
    for (int j = 0; j < s.total(); ++j) {
      if (statuses[j] == VarStatus::Basic) head.push_back(j);
    }
  }
  if (head.size() != static_cast<std::size_t>(s.m)) {
    std::fill(s.d.begin(), s.d.end(), 0.0);
    for (int j = 0; j < s.n; ++j) s.d[j] = s.cost[j];
    for (int j = 0; j < s.n; ++j) s.status[j] = VarStatus::Basic;  // forces re-placement below
    s.slack_basis();
  } else {
    s.status = statuses;
    s.head = std::move(head);
    std::fill(s.pos.begin(), s.pos.end(), -1);
    for (int k = 0; k < s.m; ++k) s.pos[s.head[k]] = k;
    for (int j = 0; j < s.total(); ++j) s.place_nonbasic(j);
    std::fill(s.w.begin(), s.w.end(), 1.0);
  }
  s.factor_dirty = true;
  s.primal_dirty = true;
}

}  // namespace rftrlp::milp
