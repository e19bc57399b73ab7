#pragma once

#include <vector>

namespace flexsched::milp::detail {

// Markowitz LU of a square sparse matrix B with threshold pivoting.
//
// Elimination runs by row operations: step k picks pivot (p_k, q_k) and
// subtracts multiples of row p_k from the other active rows. L is kept as the
// list of those row operations and U row-wise and column-wise in original
// indices, so both triangular solves skip zero entries. Singletons cost
// nothing, which keeps simplex bases (mostly slack and near-triangular)
// cheap to factor.
class SparseLu {
 public:
  // Columns of B in compressed form. Returns false when B is numerically
  // singular; unpivoted_rows()/unpivoted_cols() then list the leftovers, of
  // equal length.
  bool factorize(int m, const std::vector<int>& col_start, const std::vector<int>& row_index,
                 const std::vector<double>& value);

  // B x = v: v indexed by row, x indexed by column. v is overwritten.
  void ftran(double* v, double* x) const;
  // B' y = v: v indexed by column, y indexed by row. v is overwritten.
  void btran(double* v, double* y) const;

  const std::vector<int>& unpivoted_rows() const { return unpivoted_rows_; }
  const std::vector<int>& unpivoted_cols() const { return unpivoted_cols_; }
  size_t fill() const { return u_value_.size() + l_value_.size(); }

 private:
  int m_ = 0;
  std::vector<int> pivot_row_, pivot_col_;
  std::vector<double> pivot_value_;

  // L: per step, rows i with multipliers l_i (b_i -= l_i * b_{p_k})
  std::vector<int> l_step_, l_start_;  // only steps with at least one multiplier
  std::vector<int> l_index_;
  std::vector<double> l_value_;

  // U without its diagonal; row k holds entries in columns pivoted after k.
  std::vector<int> u_row_start_, u_col_;  // by step
  std::vector<double> u_value_;
  std::vector<int> ut_start_, ut_step_;    // column-wise by column step
  std::vector<double> ut_value_;
  std::vector<int> step_of_col_;

  std::vector<int> unpivoted_rows_, unpivoted_cols_;

  // active submatrix, kept between calls to reuse its storage
  struct Entry {
    int col;
    double value;
  };
  std::vector<std::vector<Entry>> rows_;
  std::vector<std::vector<int>> cols_;
};

}  // namespace flexsched::milp::detail
