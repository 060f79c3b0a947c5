#include "milp/basis_factor.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <cmath>

namespace rftrlp::milp::detail {

struct BasisFactor::Lu {
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> solver;
};

BasisFactor::BasisFactor() = default;
BasisFactor::~BasisFactor() = default;
BasisFactor::BasisFactor(BasisFactor&&) noexcept = default;
BasisFactor& BasisFactor::operator=(BasisFactor&&) noexcept = default;

bool BasisFactor::factor(const CscMatrix& a, const std::vector<int>& head) {
  a_ = &a;
  m_ = a.rows;
  valid_ = false;
  etas_.clear();
  kernel_rows_.clear();
  kernel_cols_.clear();
  kernel_vars_.clear();
  logical_slot_.assign(static_cast<std::size_t>(m_), -1);
  row_in_kernel_.assign(static_cast<std::size_t>(m_), -1);
  scratch_.assign(static_cast<std::size_t>(m_), 0.0);

  for (int slot = 0; slot < m_; ++slot) {
    const int var = head[static_cast<std::size_t>(slot)];
    if (var >= a.cols) {
      logical_slot_[static_cast<std::size_t>(var - a.cols)] = slot;
    } else {
      kernel_cols_.push_back(slot);
      kernel_vars_.push_back(var);
    }
  }
  for (int i = 0; i < m_; ++i) {
    if (logical_slot_[static_cast<std::size_t>(i)] < 0) {
      row_in_kernel_[static_cast<std::size_t>(i)] = static_cast<int>(kernel_rows_.size());
      kernel_rows_.push_back(i);
    }
  }
  if (kernel_rows_.size() != kernel_cols_.size()) return false;

  lu_.reset();
  const int k = static_cast<int>(kernel_cols_.size());
  if (k == 0) {
    valid_ = true;
    return true;
  }
  std::vector<Eigen::Triplet<double>> triplets;
  for (int b = 0; b < k; ++b) {
    const int j = kernel_vars_[static_cast<std::size_t>(b)];
    for (int p = a.start[j]; p < a.start[j + 1]; ++p) {
      const int row = row_in_kernel_[static_cast<std::size_t>(a.index[p])];
      if (row >= 0) triplets.emplace_back(row, b, a.value[p]);
    }
  }
  Eigen::SparseMatrix<double> kernel(k, k);
  kernel.setFromTriplets(triplets.begin(), triplets.end());
  kernel.makeCompressed();
  auto lu = std::make_unique<Lu>();
  lu->solver.analyzePattern(kernel);
  lu->solver.factorize(kernel);
  if (lu->solver.info() != Eigen::Success) return false;
  lu_ = std::move(lu);
  valid_ = true;
  return true;
}

void BasisFactor::ftran_base(std::vector<double>& v) const {
  const int k = kernel_size();
  std::vector<double>& out = scratch_;
  if (k > 0) {
    Eigen::VectorXd rhs(k);
    for (int a = 0; a < k; ++a) rhs[a] = v[static_cast<std::size_t>(kernel_rows_[static_cast<std::size_t>(a)])];
    const Eigen::VectorXd y = lu_->solver.solve(rhs);
    // Logical slots absorb the residual of their row.
    for (int b = 0; b < k; ++b) {
      const double yb = y[b];
      out[static_cast<std::size_t>(kernel_cols_[static_cast<std::size_t>(b)])] = yb;
      if (yb == 0.0) continue;
      const int j = kernel_vars_[static_cast<std::size_t>(b)];
      for (int p = a_->start[j]; p < a_->start[j + 1]; ++p) {
        if (row_in_kernel_[static_cast<std::size_t>(a_->index[p])] < 0) v[static_cast<std::size_t>(a_->index[p])] -= a_->value[p] * yb;
      }
    }
  }
  for (int i = 0; i < m_; ++i) {
    const int slot = logical_slot_[static_cast<std::size_t>(i)];
    if (slot >= 0) out[static_cast<std::size_t>(slot)] = v[static_cast<std::size_t>(i)];
  }
  v.swap(out);
}

void BasisFactor::btran_base(std::vector<double>& v) const {
  const int k = kernel_size();
  std::vector<double>& rho = scratch_;
  for (int i = 0; i < m_; ++i) {
    const int slot = logical_slot_[static_cast<std::size_t>(i)];
    rho[static_cast<std::size_t>(i)] = slot >= 0 ? v[static_cast<std::size_t>(slot)] : 0.0;
  }
  if (k > 0) {
    Eigen::VectorXd rhs(k);
    for (int b = 0; b < k; ++b) {
      double value = v[static_cast<std::size_t>(kernel_cols_[static_cast<std::size_t>(b)])];
      const int j = kernel_vars_[static_cast<std::size_t>(b)];
      for (int p = a_->start[j]; p < a_->start[j + 1]; ++p) {
        const auto row = static_cast<std::size_t>(a_->index[p]);
        if (row_in_kernel_[row] < 0) value -= a_->value[p] * rho[row];
      }
      rhs[b] = value;
    }
    const Eigen::VectorXd sol = lu_->solver.transpose().solve(rhs);
    for (int a = 0; a < k; ++a) rho[static_cast<std::size_t>(kernel_rows_[static_cast<std::size_t>(a)])] = sol[a];
  }
  v.swap(rho);
}

void BasisFactor::ftran(std::vector<double>& v) const {
  ftran_base(v);
  for (const auto& eta : etas_) {
    double& pivot_entry = v[static_cast<std::size_t>(eta.slot)];
    if (pivot_entry == 0.0) continue;
    pivot_entry /= eta.pivot;
    const double t = pivot_entry;
    for (std::size_t p = 0; p < eta.index.size(); ++p) v[static_cast<std::size_t>(eta.index[p])] -= eta.value[p] * t;
  }
}

void BasisFactor::btran(std::vector<double>& v) const {
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double sum = v[static_cast<std::size_t>(it->slot)];
    for (std::size_t p = 0; p < it->index.size(); ++p) sum -= v[static_cast<std::size_t>(it->index[p])] * it->value[p];
    v[static_cast<std::size_t>(it->slot)] = sum / it->pivot;
  }
  btran_base(v);
}

void BasisFactor::add_eta(int slot, const std::vector<double>& column) {
  Eta eta{slot, column[static_cast<std::size_t>(slot)], {}, {}};
  for (int i = 0; i < m_; ++i) {
    const double value = column[static_cast<std::size_t>(i)];
    if (i != slot && std::abs(value) > 1e-13) {
      eta.index.push_back(i);
      eta.value.push_back(value);
    }
  }
  etas_.push_back(std::move(eta));
}

}  // namespace rftrlp::milp::detail
