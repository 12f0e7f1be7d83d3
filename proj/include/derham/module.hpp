#pragma once

#include <string>
#include <vector>

#include "derham/weyl.hpp"

namespace derham {

/// Per-generator integer offsets of the V_d-filtration on a free module.
using ShiftVector = std::vector<long>;

/// Row vector in the free module D^m, m = rank.
class ModuleElement {
 public:
  ModuleElement() = default;
  ModuleElement(int rank, int nvars, int nweyl);
  ModuleElement(int rank, int n) : ModuleElement(rank, n, n) {}
  explicit ModuleElement(std::vector<WeylElement> comps);

  static ModuleElement unit(int rank, int n, int i);
  static ModuleElement unit(int rank, int nvars, int nweyl, int i);

  int rank() const { return static_cast<int>(comps_.size()); }
  int nvars() const { return nvars_; }
  int nweyl() const { return nweyl_; }
  const WeylElement& operator[](int i) const { return comps_[i]; }
  WeylElement& operator[](int i) { return comps_[i]; }
  const std::vector<WeylElement>& components() const { return comps_; }
  bool is_zero() const;

  ModuleElement operator+(const ModuleElement& o) const;
  ModuleElement operator-(const ModuleElement& o) const;
  ModuleElement operator-() const;
  ModuleElement& operator+=(const ModuleElement& o) { return *this = *this + o; }
  ModuleElement& operator-=(const ModuleElement& o) { return *this = *this - o; }
  bool operator==(const ModuleElement& o) const { return comps_ == o.comps_; }

  /// Concatenation of two vectors (direct sum of the free modules).
  ModuleElement concat(const ModuleElement& o) const;
  ModuleElement slice(int begin, int end) const;

  std::string to_string() const;

 private:
  int nvars_ = 0;
  int nweyl_ = 0;
  std::vector<WeylElement> comps_;
};

/// Left multiplication P * v.
ModuleElement operator*(const WeylElement& p, const ModuleElement& v);

/// Shifted V_d-degree: max_j v_degree(v_j) + shift_j.
long v_degree(const ModuleElement& v, FiltrationSpec spec, const ShiftVector& shift);

/// V-leading form with respect to the shifted degree.
ModuleElement v_leading_form(const ModuleElement& v, FiltrationSpec spec,
                             const ShiftVector& shift);

ModuleElement fourier(const ModuleElement& v);

/// Matrix of a left-module morphism D^rows -> D^cols acting on row vectors
/// by right multiplication: e_i |-> row(i).
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  OperatorMatrix(int rows, int cols, int n);
  explicit OperatorMatrix(std::vector<ModuleElement> rows, int cols, int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int n() const { return n_; }
  const WeylElement& at(int i, int j) const { return rows_data_[i][j]; }
  WeylElement& at(int i, int j) { return rows_data_[i][j]; }
  const ModuleElement& row(int i) const { return rows_data_[i]; }
  ModuleElement& row(int i) { return rows_data_[i]; }
  const std::vector<ModuleElement>& row_vectors() const { return rows_data_; }

  /// v * M.
  ModuleElement apply(const ModuleElement& v) const;
  /// (this then other): e_i |-> row_i * other.
  OperatorMatrix then(const OperatorMatrix& other) const;
  bool is_zero() const;

  ShiftVector source_shift;
  ShiftVector target_shift;

 private:
  int rows_ = 0;
  int cols_ = 0;
  int n_ = 0;
  std::vector<ModuleElement> rows_data_;
};

OperatorMatrix fourier(const OperatorMatrix& m);

}  // namespace derham
