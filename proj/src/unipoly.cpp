#include "derham/unipoly.hpp"

#include <algorithm>
#include <sstream>

namespace derham {

UniPoly::UniPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Scalar& c) { return UniPoly({c}); }

UniPoly UniPoly::linear_root(const Scalar& root) { return UniPoly({-root, Scalar(1)}); }

void UniPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Scalar> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + o * Scalar(-1); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Scalar> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const Scalar& k) const {
  std::vector<Scalar> r = c_;
  for (auto& x : r) x *= k;
  return UniPoly(std::move(r));
}

void UniPoly::divmod(const UniPoly& d, UniPoly& q, UniPoly& r) const {
  if (d.is_zero()) throw InvalidInput("UniPoly: division by zero polynomial");
  std::vector<Scalar> rem = c_;
  std::vector<Scalar> quo(std::max<int>(0, degree() - d.degree() + 1));
  for (int k = degree() - d.degree(); k >= 0; --k) {
    Scalar coef = rem[k + d.degree()] / d.lead();
    quo[k] = coef;
    if (sgn(coef) == 0) continue;
    for (int j = 0; j <= d.degree(); ++j) rem[k + j] -= coef * d.c_[j];
  }
  q = UniPoly(std::move(quo));
  r = UniPoly(std::move(rem));
}

Scalar UniPoly::eval(const Scalar& s) const {
  Scalar acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  return *this * (1 / lead());
}

UniPoly UniPoly::shifted(const Scalar& a) const {
  // Horner in the shifted variable
  UniPoly acc;
  UniPoly lin({a, Scalar(1)});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + UniPoly::constant(*it);
  return acc;
}

std::vector<long> UniPoly::integer_roots() const {
  std::vector<long> roots;
  if (degree() <= 0) return roots;
  // strip factors of s, then candidates divide the constant term of the
  // integer-cleared polynomial; the Cauchy bound caps the search
  std::size_t low = 0;
  while (sgn(c_[low]) == 0) ++low;
  if (low > 0) roots.push_back(0);
  UniPoly m = monic();
  Scalar bound = 0;
  for (int i = 0; i < m.degree(); ++i) bound = std::max(bound, Scalar(abs(m.c_[i])));
  bound += 1;
  mpz_class b = bound.get_num() / bound.get_den() + 1;
  if (b > 1000000) b = 1000000;
  long lim = b.get_si();
  for (long k = -lim; k <= lim; ++k) {
    if (k == 0) continue;
    if (sgn(eval(Scalar(k))) == 0) roots.push_back(k);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Scalar& c = c_[i];
    if (sgn(c) == 0) continue;
    Scalar a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = a == 1;
    if (i == 0) {
      os << a.get_str();
      continue;
    }
    if (!unit) os << a.get_str() << '*';
    os << var;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly q, r;
    a.divmod(b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPoly lcm(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  UniPoly g = gcd(a, b);
  UniPoly q, r;
  (a * b).divmod(g, q, r);
  return q.monic();
}

}  // namespace derham
