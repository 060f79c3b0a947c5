#pragma once

#include <memory>
#include <vector>

namespace rftrlp::milp::detail {

/// Compressed sparse columns of the structural part of the constraint matrix.
struct CscMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> start;  // cols + 1
  std::vector<int> index;
  std::vector<double> value;
};

/// LU of a simplex basis [A | I] restricted to its structural kernel, plus a
/// product-form eta file for the updates since the last factorization.
///
/// Slots are basis positions; head[slot] is a variable index where indices
/// below `cols` are structural and `cols + i` is the logical of row i.
/// ftran maps a row-space vector to slot space (B^-1 a); btran maps a
/// slot-space vector to row space (B^-T v).
class BasisFactor {
 public:
  BasisFactor();
  ~BasisFactor();
  BasisFactor(BasisFactor&&) noexcept;
  BasisFactor& operator=(BasisFactor&&) noexcept;

  /// False when the kernel is numerically singular.
  bool factor(const CscMatrix& a, const std::vector<int>& head);

  void ftran(std::vector<double>& v) const;
  void btran(std::vector<double>& v) const;

  /// Record the replacement of the variable in `slot` by a column whose
  /// ftran image (before this update) is `column`.
  void add_eta(int slot, const std::vector<double>& column);

  int eta_count() const { return static_cast<int>(etas_.size()); }
  int kernel_size() const { return static_cast<int>(kernel_cols_.size()); }
  bool valid() const { return valid_; }
  void invalidate() { valid_ = false; }

 private:
  struct Eta {
    int slot;
    double pivot;
    std::vector<int> index;
    std::vector<double> value;
  };
  struct Lu;

  void ftran_base(std::vector<double>& v) const;
  void btran_base(std::vector<double>& v) const;

  const CscMatrix* a_ = nullptr;
  int m_ = 0;
  bool valid_ = false;
  std::vector<int> kernel_rows_;   // kernel row -> matrix row
  std::vector<int> kernel_cols_;   // kernel column -> slot
  std::vector<int> kernel_vars_;   // kernel column -> structural variable
  std::vector<int> logical_slot_;  // matrix row -> slot of its basic logical, or -1
  std::vector<int> row_in_kernel_; // matrix row -> kernel row, or -1
  std::unique_ptr<Lu> lu_;
  std::vector<Eta> etas_;
  mutable std::vector<double> scratch_;
};

}  // namespace rftrlp::milp::detail
