#pragma once

#include <vector>

#include "derham/weyl.hpp"

namespace derham {

/// Dense exact matrix; rows are source basis vectors (row-vector maps).
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& at(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  const Scalar& at(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }
  bool is_zero() const;

  RationalMatrix operator*(const RationalMatrix& o) const;
  bool operator==(const RationalMatrix& o) const = default;

  /// Rank by fraction-free elimination over Z after clearing row denominators.
  int rank() const;
  static RationalMatrix identity(int k);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> a_;
};

}  // namespace derham
