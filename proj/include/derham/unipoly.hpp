#pragma once

#include <string>
#include <vector>

#include "derham/weyl.hpp"

namespace derham {

/// Univariate polynomial over Q; coeffs[i] multiplies s^i, no trailing zeros.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Scalar> coeffs);
  static UniPoly constant(const Scalar& c);
  static UniPoly linear_root(const Scalar& root);  // s - root

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar lead() const { return c_.empty() ? Scalar(0) : c_.back(); }

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator*(const Scalar& k) const;
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  /// Quotient and remainder; throws on division by zero.
  void divmod(const UniPoly& d, UniPoly& q, UniPoly& r) const;
  Scalar eval(const Scalar& s) const;
  UniPoly monic() const;
  /// p(s + a).
  UniPoly shifted(const Scalar& a) const;

  /// Integer roots in increasing order, each listed once.
  std::vector<long> integer_roots() const;

  /// e.g. "s^2 + 3*s + 2"; the variable name is configurable.
  std::string to_string(const std::string& var = "s") const;

 private:
  void trim();
  std::vector<Scalar> c_;
};

UniPoly gcd(UniPoly a, UniPoly b);
UniPoly lcm(const UniPoly& a, const UniPoly& b);

/// Monic polynomial in theta used for b-functions.
using ThetaPolynomial = UniPoly;

}  // namespace derham
