#pragma once

#include "toric/numeric.hpp"

#include <cstddef>
#include <initializer_list>

namespace toric {

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}
  IntMat(std::initializer_list<std::initializer_list<long>> init);

  static IntMat identity(std::size_t n);
  /// Matrix whose rows are the given vectors (all the same length).
  static IntMat from_rows(const std::vector<IntVec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntVec row(std::size_t i) const;
  IntVec col(std::size_t j) const;

  bool operator==(const IntMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  IntMat transpose() const;
  IntMat operator*(const IntMat& o) const;
  IntVec operator*(const IntVec& v) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

struct SmithResult {
  IntMat U, S, V;  // U*A*V = S, U and V unimodular, S diagonal, d1 | d2 | ...
};

/// Smith normal form with transformation matrices. Diagonal entries are
/// nonnegative and satisfy the divisibility chain.
SmithResult smith_normal_form(const IntMat& a);

/// Rank over Q.
std::size_t rank(const IntMat& a);

/// Determinant (square matrices), fraction-free.
Int determinant(const IntMat& a);

/// Basis of the integer kernel {x : a x = 0}. The basis spans the kernel
/// saturated in Z^cols.
std::vector<IntVec> integer_kernel(const IntMat& a);

/// Solve a x = b over Z. Returns false when no integral solution exists.
bool solve_integer(const IntMat& a, const IntVec& b, IntVec& x);

/// Column-wise integral solve a X = B.
bool solve_integer_matrix(const IntMat& a, const IntMat& b, IntMat& x);

/// Solve a x = b over Q. Returns false when inconsistent.
bool solve_rational(const IntMat& a, const RatVec& b, RatVec& x);

/// Inverse of a unimodular integer matrix.
IntMat unimodular_inverse(const IntMat& u);

/// Basis of the saturation of the row span: {x in Z^n : x in rowspan_Q(a)}.
std::vector<IntVec> saturated_row_basis(const IntMat& a);

}  // namespace toric
