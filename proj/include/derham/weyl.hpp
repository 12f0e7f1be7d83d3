#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace derham {

/// Exact rational coefficient. GMP keeps it canonical (lowest terms,
/// positive denominator) after every arithmetic operation.
using Scalar = mpq_class;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Inconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr int kMaxVars = 8;

/// Exponent triple (alpha, beta, h) of the normally ordered monomial
/// x^alpha d^beta h^c. The h slot is only ever nonzero inside the
/// homogenized Groebner engine.
struct Mono {
  std::array<std::uint16_t, 2 * kMaxVars + 1> e{};

  std::uint16_t& x(int i) { return e[i]; }
  std::uint16_t x(int i) const { return e[i]; }
  std::uint16_t& d(int i) { return e[kMaxVars + i]; }
  std::uint16_t d(int i) const { return e[kMaxVars + i]; }
  std::uint16_t& h() { return e[2 * kMaxVars]; }
  std::uint16_t h() const { return e[2 * kMaxVars]; }

  int degree() const {  // |alpha| + |beta|, h excluded
    int s = 0;
    for (int i = 0; i < 2 * kMaxVars; ++i) s += e[i];
    return s;
  }
  bool operator==(const Mono&) const = default;
  bool divides(const Mono& o) const {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  bool has_x() const {
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i]) return true;
    return false;
  }
};

Mono mono_lcm(const Mono& a, const Mono& b);
Mono mono_quotient(const Mono& big, const Mono& small);

/// Graded lexicographic order on (alpha, beta), h last. Used for the
/// canonical storage and text form of WeylElement.
struct CanonicalGreater {
  bool operator()(const Mono& a, const Mono& b) const;
};

struct WeylTerm {
  Mono mono;
  Scalar coeff;
};

/// Element of the Weyl algebra over Q in `nvars` variables x_1..x_n, of
/// which the first `nweyl` carry derivations d_i with d_i x_i = x_i d_i + 1.
/// Remaining variables are central (used internally for elimination).
/// Terms are kept sorted by CanonicalGreater, without zeros.
class WeylElement {
 public:
  WeylElement() = default;
  explicit WeylElement(int n) : nvars_(n), nweyl_(n) { check_ring(); }
  WeylElement(int nvars, int nweyl) : nvars_(nvars), nweyl_(nweyl) {
    check_ring();
  }

  static WeylElement constant(int n, const Scalar& c);
  static WeylElement constant(int nvars, int nweyl, const Scalar& c);
  static WeylElement x(int n, int i);  // 0-based index
  static WeylElement d(int n, int i);
  static WeylElement monomial(int nvars, int nweyl, const Mono& m,
                              const Scalar& c);

  int nvars() const { return nvars_; }
  int nweyl() const { return nweyl_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<WeylTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool operator==(const WeylElement& o) const;
  bool operator!=(const WeylElement& o) const { return !(*this == o); }

  WeylElement operator+(const WeylElement& o) const;
  WeylElement operator-(const WeylElement& o) const;
  WeylElement operator-() const;
  WeylElement operator*(const WeylElement& o) const;  // weyl_mul
  WeylElement operator*(const Scalar& c) const;
  WeylElement& operator+=(const WeylElement& o) { return *this = *this + o; }
  WeylElement& operator-=(const WeylElement& o) { return *this = *this - o; }

  /// True when no derivation occurs (a commutative polynomial).
  bool is_polynomial() const;
  bool is_constant() const;
  Scalar constant_term() const;

  /// Builds from unsorted terms, merging duplicates.
  static WeylElement from_terms(int nvars, int nweyl,
                                std::vector<WeylTerm> terms);

  /// Canonical text, e.g. "3*x1^2*d1 - 1/2*d2".
  std::string to_string() const;

 private:
  void check_ring() const;
  void check_same(const WeylElement& o) const;

  int nvars_ = 0;
  int nweyl_ = 0;
  std::vector<WeylTerm> terms_;
};

/// Expands x^a d^b * x^c d^d into normal order. When `homogenized`, each
/// commutation contributes h^2 instead of 1.
void mul_monomials(const Mono& left, const Mono& right, int nweyl,
                   bool homogenized,
                   std::vector<std::pair<Mono, mpz_class>>& out);

WeylElement weyl_mul(const WeylElement& p, const WeylElement& q);

/// V_d-filtration index relative to H = Var(x_1..x_d).
struct FiltrationSpec {
  int d = 0;
};

inline constexpr long kMinusInfinity = std::numeric_limits<long>::min();

/// max over terms of |beta_H| - |alpha_H|, plus shift; kMinusInfinity for 0.
long v_degree(const WeylElement& p, FiltrationSpec spec, long shift = 0);
long v_degree(const Mono& m, int d);

/// x_i -> d_i, d_i -> -x_i.
WeylElement fourier(const WeylElement& p);

/// theta_d = x_1 d_1 + ... + x_d d_d.
WeylElement theta(int n, FiltrationSpec spec);

/// Natural action on commutative polynomials (d_i acting as d/dx_i).
WeylElement apply_to_polynomial(const WeylElement& p, const WeylElement& g);

/// Formal partial derivative of a commutative polynomial.
WeylElement partial(const WeylElement& g, int i);

/// Substitutes a rational value for the central variable at index `var`
/// and drops that variable from the ring (it must be the last one).
WeylElement substitute_last(const WeylElement& p, const Scalar& value);

/// Embeds p into a ring with more variables (new ones appended).
WeylElement embed(const WeylElement& p, int nvars, int nweyl);

/// Drops trailing variables that must not occur in p.
WeylElement restrict_ring(const WeylElement& p, int nvars, int nweyl);

/// The V_d-homogeneous component of maximal shifted degree.
WeylElement v_leading_form(const WeylElement& p, FiltrationSpec spec);

WeylElement pow(const WeylElement& p, unsigned k);

/// Rescales so that the leading canonical coefficient is 1 (0 stays 0).
WeylElement monic(const WeylElement& p);

}  // namespace derham
