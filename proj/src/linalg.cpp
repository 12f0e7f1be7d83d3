#include "derham/linalg.hpp"

#include <algorithm>

namespace derham {

bool RationalMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("RationalMatrix: inner dimensions differ");
  RationalMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& x = at(i, k);
      if (sgn(x) == 0) continue;
      for (int j = 0; j < o.cols_; ++j)
        if (sgn(o.at(k, j)) != 0) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

RationalMatrix RationalMatrix::identity(int k) {
  RationalMatrix m(k, k);
  for (int i = 0; i < k; ++i) m.at(i, i) = 1;
  return m;
}

int RationalMatrix::rank() const {
  // integer rows, each kept primitive; pivot rows eliminate by cross-multiplication
  std::vector<std::vector<mpz_class>> m;
  for (int i = 0; i < rows_; ++i) {
    mpz_class l = 1;
    bool nz = false;
    for (int j = 0; j < cols_; ++j)
      if (sgn(at(i, j)) != 0) {
        nz = true;
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), at(i, j).get_den_mpz_t());
      }
    if (!nz) continue;
    std::vector<mpz_class> row(cols_);
    for (int j = 0; j < cols_; ++j) {
      if (sgn(at(i, j)) == 0) continue;
      row[j] = at(i, j).get_num() * (l / at(i, j).get_den());
    }
    m.push_back(std::move(row));
  }
  int rank = 0;
  std::size_t r0 = 0;
  for (int c = 0; c < cols_ && r0 < m.size(); ++c) {
    std::size_t piv = m.size();
    for (std::size_t r = r0; r < m.size(); ++r)
      if (sgn(m[r][c]) != 0 && (piv == m.size() || abs(m[r][c]) < abs(m[piv][c]))) piv = r;
    if (piv == m.size()) continue;
    std::swap(m[r0], m[piv]);
    const auto& p = m[r0];
    for (std::size_t r = r0 + 1; r < m.size(); ++r) {
      if (sgn(m[r][c]) == 0) continue;
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), p[c].get_mpz_t(), m[r][c].get_mpz_t());
      mpz_class a = p[c] / g, b = m[r][c] / g;
      mpz_class cont = 0;
      for (int j = c; j < cols_; ++j) {
        m[r][j] = a * m[r][j] - b * p[j];
        if (sgn(m[r][j]) != 0) mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), m[r][j].get_mpz_t());
      }
      if (cont > 1)
        for (int j = c; j < cols_; ++j)
          if (sgn(m[r][j]) != 0) m[r][j] /= cont;
    }
    ++r0;
    ++rank;
  }
  return rank;
}

}  // namespace derham
