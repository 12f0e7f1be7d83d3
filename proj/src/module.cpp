#include "derham/module.hpp"

#include <algorithm>
#include <sstream>

namespace derham {

ModuleElement::ModuleElement(int rank, int nvars, int nweyl)
    : nvars_(nvars), nweyl_(nweyl), comps_(rank, WeylElement(nvars, nweyl)) {}

ModuleElement::ModuleElement(std::vector<WeylElement> comps) : comps_(std::move(comps)) {
  if (comps_.empty()) return;
  nvars_ = comps_[0].nvars();
  nweyl_ = comps_[0].nweyl();
  for (const auto& c : comps_)
    if (c.nvars() != nvars_ || c.nweyl() != nweyl_)
      throw DimensionMismatch("module element components over different rings");
}

ModuleElement ModuleElement::unit(int rank, int n, int i) { return unit(rank, n, n, i); }

ModuleElement ModuleElement::unit(int rank, int nvars, int nweyl, int i) {
  ModuleElement v(rank, nvars, nweyl);
  v.comps_[i] = WeylElement::constant(nvars, nweyl, 1);
  return v;
}

bool ModuleElement::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(),
                     [](const WeylElement& c) { return c.is_zero(); });
}

ModuleElement ModuleElement::operator+(const ModuleElement& o) const {
  if (rank() != o.rank()) throw DimensionMismatch("module elements of different rank");
  ModuleElement r = *this;
  for (int i = 0; i < rank(); ++i) r.comps_[i] += o.comps_[i];
  return r;
}

ModuleElement ModuleElement::operator-(const ModuleElement& o) const {
  if (rank() != o.rank()) throw DimensionMismatch("module elements of different rank");
  ModuleElement r = *this;
  for (int i = 0; i < rank(); ++i) r.comps_[i] -= o.comps_[i];
  return r;
}

ModuleElement ModuleElement::operator-() const {
  ModuleElement r = *this;
  for (auto& c : r.comps_) c = -c;
  return r;
}

ModuleElement ModuleElement::concat(const ModuleElement& o) const {
  std::vector<WeylElement> c = comps_;
  c.insert(c.end(), o.comps_.begin(), o.comps_.end());
  ModuleElement r(std::move(c));
  if (r.comps_.empty()) {
    r.nvars_ = nvars_;
    r.nweyl_ = nweyl_;
  }
  return r;
}

ModuleElement ModuleElement::slice(int begin, int end) const {
  ModuleElement r(end - begin, nvars_, nweyl_);
  for (int i = begin; i < end; ++i) r.comps_[i - begin] = comps_[i];
  return r;
}

std::string ModuleElement::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < rank(); ++i) {
    if (i) os << ", ";
    os << comps_[i].to_string();
  }
  os << ')';
  return os.str();
}

ModuleElement operator*(const WeylElement& p, const ModuleElement& v) {
  ModuleElement r = v;
  for (int i = 0; i < v.rank(); ++i) r[i] = p * v[i];
  return r;
}

long v_degree(const ModuleElement& v, FiltrationSpec spec, const ShiftVector& shift) {
  if (static_cast<int>(shift.size()) != v.rank())
    throw DimensionMismatch("shift vector length differs from module rank");
  long best = kMinusInfinity;
  for (int i = 0; i < v.rank(); ++i)
    if (!v[i].is_zero()) best = std::max(best, v_degree(v[i], spec, shift[i]));
  return best;
}

ModuleElement v_leading_form(const ModuleElement& v, FiltrationSpec spec,
                             const ShiftVector& shift) {
  long top = v_degree(v, spec, shift);
  ModuleElement r(v.rank(), v.nvars(), v.nweyl());
  if (top == kMinusInfinity) return r;
  for (int i = 0; i < v.rank(); ++i) {
    std::vector<WeylTerm> keep;
    for (const auto& t : v[i].terms())
      if (v_degree(t.mono, spec.d) + shift[i] == top) keep.push_back(t);
    r[i] = WeylElement::from_terms(v.nvars(), v.nweyl(), std::move(keep));
  }
  return r;
}

ModuleElement fourier(const ModuleElement& v) {
  ModuleElement r = v;
  for (int i = 0; i < v.rank(); ++i) r[i] = fourier(v[i]);
  return r;
}

OperatorMatrix::OperatorMatrix(int rows, int cols, int n)
    : rows_(rows), cols_(cols), n_(n), rows_data_(rows, ModuleElement(cols, n)) {}

OperatorMatrix::OperatorMatrix(std::vector<ModuleElement> rows, int cols, int n)
    : rows_(static_cast<int>(rows.size())), cols_(cols), n_(n), rows_data_(std::move(rows)) {
  for (const auto& r : rows_data_)
    if (r.rank() != cols) throw DimensionMismatch("operator matrix row of wrong length");
}

ModuleElement OperatorMatrix::apply(const ModuleElement& v) const {
  if (v.rank() != rows_) throw DimensionMismatch("vector length differs from matrix rows");
  ModuleElement r(cols_, n_);
  for (int i = 0; i < rows_; ++i) {
    if (v[i].is_zero()) continue;
    for (int j = 0; j < cols_; ++j)
      if (!rows_data_[i][j].is_zero()) r[j] += v[i] * rows_data_[i][j];
  }
  return r;
}

OperatorMatrix OperatorMatrix::then(const OperatorMatrix& other) const {
  if (cols_ != other.rows_) throw DimensionMismatch("matrix composition size mismatch");
  OperatorMatrix r(rows_, other.cols_, n_);
  for (int i = 0; i < rows_; ++i) r.rows_data_[i] = other.apply(rows_data_[i]);
  r.source_shift = source_shift;
  r.target_shift = other.target_shift;
  return r;
}

bool OperatorMatrix::is_zero() const {
  return std::all_of(rows_data_.begin(), rows_data_.end(),
                     [](const ModuleElement& r) { return r.is_zero(); });
}

OperatorMatrix fourier(const OperatorMatrix& m) {
  OperatorMatrix r = m;
  for (int i = 0; i < m.rows(); ++i) r.row(i) = fourier(m.row(i));
  return r;
}

}  // namespace derham
