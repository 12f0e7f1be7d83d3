#include "derham/weyl.hpp"

#include <algorithm>
#include <sstream>

namespace derham {

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r;
  for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
  return r;
}

Mono mono_quotient(const Mono& big, const Mono& small) {
  Mono r;
  for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = big.e[i] - small.e[i];
  return r;
}

bool CanonicalGreater::operator()(const Mono& a, const Mono& b) const {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
  return false;
}

void WeylElement::check_ring() const {
  if (nvars_ < 0 || nvars_ > kMaxVars || nweyl_ < 0 || nweyl_ > nvars_)
    throw InvalidInput("unsupported variable count");
}

void WeylElement::check_same(const WeylElement& o) const {
  if (nvars_ != o.nvars_ || nweyl_ != o.nweyl_)
    throw DimensionMismatch("Weyl elements over different rings");
}

WeylElement WeylElement::constant(int n, const Scalar& c) {
  return constant(n, n, c);
}

WeylElement WeylElement::constant(int nvars, int nweyl, const Scalar& c) {
  return monomial(nvars, nweyl, Mono{}, c);
}

WeylElement WeylElement::monomial(int nvars, int nweyl, const Mono& m,
                                  const Scalar& c) {
  WeylElement r(nvars, nweyl);
  if (c != 0) r.terms_.push_back({m, c});
  return r;
}

WeylElement WeylElement::x(int n, int i) {
  Mono m;
  m.x(i) = 1;
  return monomial(n, n, m, 1);
}

WeylElement WeylElement::d(int n, int i) {
  Mono m;
  m.d(i) = 1;
  return monomial(n, n, m, 1);
}

WeylElement WeylElement::from_terms(int nvars, int nweyl,
                                    std::vector<WeylTerm> terms) {
  WeylElement r(nvars, nweyl);
  std::sort(terms.begin(), terms.end(), [](const WeylTerm& a, const WeylTerm& b) {
    return CanonicalGreater{}(a.mono, b.mono);
  });
  for (auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().mono == t.mono) {
      r.terms_.back().coeff += t.coeff;
      if (r.terms_.back().coeff == 0) r.terms_.pop_back();
    } else if (t.coeff != 0) {
      r.terms_.push_back(std::move(t));
    }
  }
  return r;
}

bool WeylElement::operator==(const WeylElement& o) const {
  if (nvars_ != o.nvars_ || nweyl_ != o.nweyl_) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].mono == o.terms_[i].mono) ||
        terms_[i].coeff != o.terms_[i].coeff)
      return false;
  return true;
}

WeylElement WeylElement::operator+(const WeylElement& o) const {
  check_same(o);
  WeylElement r(nvars_, nweyl_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  CanonicalGreater gt;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() ||
        (i < terms_.size() && gt(terms_[i].mono, o.terms_[j].mono))) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || gt(o.terms_[j].mono, terms_[i].mono)) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Scalar c = terms_[i].coeff + o.terms_[j].coeff;
      if (c != 0) r.terms_.push_back({terms_[i].mono, c});
      ++i;
      ++j;
    }
  }
  return r;
}

WeylElement WeylElement::operator-() const {
  WeylElement r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

WeylElement WeylElement::operator-(const WeylElement& o) const {
  return *this + (-o);
}

WeylElement WeylElement::operator*(const Scalar& c) const {
  if (c == 0) return WeylElement(nvars_, nweyl_);
  WeylElement r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

void mul_monomials(const Mono& left, const Mono& right, int nweyl,
                   bool homogenized,
                   std::vector<std::pair<Mono, mpz_class>>& out) {
  Mono base;
  for (std::size_t i = 0; i < base.e.size(); ++i) {
    unsigned s = unsigned(left.e[i]) + right.e[i];
    if (s > 0xffffu) throw std::overflow_error("monomial exponent overflow");
    base.e[i] = static_cast<std::uint16_t>(s);
  }
  // d_i^q x_i^a = sum_k C(q,k) C(a,k) k! x_i^(a-k) d_i^(q-k) (h^2k)
  int active[kMaxVars];
  int nactive = 0;
  for (int i = 0; i < nweyl; ++i)
    if (left.d(i) > 0 && right.x(i) > 0) active[nactive++] = i;
  std::size_t start = out.size();
  out.emplace_back(base, mpz_class(1));
  for (int ai = 0; ai < nactive; ++ai) {
    int i = active[ai];
    unsigned q = left.d(i), a = right.x(i);
    unsigned kmax = std::min(q, a);
    std::size_t end = out.size();
    for (std::size_t t = start; t < end; ++t) {
      mpz_class coef = 1;
      for (unsigned k = 1; k <= kmax; ++k) {
        // C(q,k)C(a,k)k! = prod (q-j)(a-j)/(j+1) incrementally
        coef = coef * (q - k + 1) * (a - k + 1) / k;
        Mono m = out[t].first;
        m.x(i) -= k;
        m.d(i) -= k;
        if (homogenized) m.h() += 2 * k;
        mpz_class c = out[t].second * coef;
        out.emplace_back(m, std::move(c));
      }
    }
  }
}

WeylElement weyl_mul(const WeylElement& p, const WeylElement& q) {
  if (p.nvars() != q.nvars() || p.nweyl() != q.nweyl())
    throw DimensionMismatch("weyl_mul: elements over different rings");
  std::vector<WeylTerm> terms;
  std::vector<std::pair<Mono, mpz_class>> buf;
  for (const auto& a : p.terms())
    for (const auto& b : q.terms()) {
      buf.clear();
      mul_monomials(a.mono, b.mono, p.nweyl(), false, buf);
      Scalar c = a.coeff * b.coeff;
      for (auto& [m, k] : buf) terms.push_back({m, c * Scalar(k)});
    }
  return WeylElement::from_terms(p.nvars(), p.nweyl(), std::move(terms));
}

WeylElement WeylElement::operator*(const WeylElement& o) const {
  return weyl_mul(*this, o);
}

bool WeylElement::is_polynomial() const {
  for (const auto& t : terms_)
    for (int i = 0; i < kMaxVars; ++i)
      if (t.mono.d(i)) return false;
  return true;
}

bool WeylElement::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == Mono{});
}

Scalar WeylElement::constant_term() const {
  if (!terms_.empty() && terms_.back().mono == Mono{}) return terms_.back().coeff;
  return 0;
}

namespace {
void append_var(std::ostringstream& os, bool& first, const char* name, int idx,
                int e) {
  if (e == 0) return;
  if (!first) os << '*';
  first = false;
  os << name << idx + 1;
  if (e > 1) os << '^' << e;
}
}  // namespace

std::string WeylElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool lead = true;
  for (const auto& t : terms_) {
    Scalar c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (lead) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    lead = false;
    bool unit = t.mono == Mono{};
    bool first = true;
    if (c != 1 || unit) {
      os << c.get_str();
      first = false;
    }
    for (int i = 0; i < kMaxVars; ++i) append_var(os, first, "x", i, t.mono.x(i));
    for (int i = 0; i < kMaxVars; ++i) append_var(os, first, "d", i, t.mono.d(i));
    if (t.mono.h()) {
      if (!first) os << '*';
      os << 'h';
      if (t.mono.h() > 1) os << '^' << t.mono.h();
    }
  }
  return os.str();
}

long v_degree(const Mono& m, int d) {
  long v = 0;
  for (int i = 0; i < d; ++i) v += long(m.d(i)) - long(m.x(i));
  return v;
}

long v_degree(const WeylElement& p, FiltrationSpec spec, long shift) {
  if (p.is_zero()) return kMinusInfinity;
  if (spec.d < 0 || spec.d > p.nweyl())
    throw InvalidInput("filtration index out of range");
  long best = kMinusInfinity;
  for (const auto& t : p.terms()) best = std::max(best, v_degree(t.mono, spec.d));
  return best + shift;
}

WeylElement fourier(const WeylElement& p) {
  const int n = p.nvars(), w = p.nweyl();
  WeylElement result(n, w);
  for (const auto& t : p.terms()) {
    // x^a d^b -> d^a (-x)^b, then normal order.
    Mono left, right;
    int sign_exp = 0;
    for (int i = 0; i < n; ++i) {
      if (i < w) {
        left.d(i) = t.mono.x(i);
        right.x(i) = t.mono.d(i);
        sign_exp += t.mono.d(i);
      } else {
        left.x(i) = t.mono.x(i);
      }
    }
    std::vector<std::pair<Mono, mpz_class>> buf;
    mul_monomials(left, right, w, false, buf);
    Scalar c = (sign_exp % 2) ? -t.coeff : t.coeff;
    std::vector<WeylTerm> terms;
    for (auto& [m, k] : buf) terms.push_back({m, c * Scalar(k)});
    result += WeylElement::from_terms(n, w, std::move(terms));
  }
  return result;
}

WeylElement theta(int n, FiltrationSpec spec) {
  if (spec.d <= 0) throw InvalidInput("theta: empty theta operator (d = 0)");
  if (spec.d > n) throw InvalidInput("theta: d exceeds variable count");
  WeylElement r(n);
  for (int i = 0; i < spec.d; ++i) {
    Mono m;
    m.x(i) = 1;
    m.d(i) = 1;
    r += WeylElement::monomial(n, n, m, 1);
  }
  return r;
}

WeylElement partial(const WeylElement& g, int i) {
  std::vector<WeylTerm> terms;
  for (const auto& t : g.terms()) {
    if (t.mono.x(i) == 0) continue;
    Mono m = t.mono;
    m.x(i) -= 1;
    terms.push_back({m, t.coeff * t.mono.x(i)});
  }
  return WeylElement::from_terms(g.nvars(), g.nweyl(), std::move(terms));
}

WeylElement apply_to_polynomial(const WeylElement& p, const WeylElement& g) {
  if (p.nvars() != g.nvars()) throw DimensionMismatch("apply_to_polynomial");
  if (!g.is_polynomial())
    throw InvalidInput("apply_to_polynomial: argument is not a polynomial");
  WeylElement result(g.nvars(), g.nweyl());
  for (const auto& t : p.terms()) {
    WeylElement cur = g;
    for (int i = 0; i < p.nweyl(); ++i)
      for (int k = 0; k < t.mono.d(i); ++k) cur = partial(cur, i);
    Mono xm;
    for (int i = 0; i < kMaxVars; ++i) xm.x(i) = t.mono.x(i);
    result += WeylElement::monomial(g.nvars(), g.nweyl(), xm, t.coeff) * cur;
  }
  return result;
}

WeylElement substitute_last(const WeylElement& p, const Scalar& value) {
  const int last = p.nvars() - 1;
  if (last < p.nweyl()) throw InvalidInput("substitute_last: variable is not central");
  std::vector<WeylTerm> terms;
  for (const auto& t : p.terms()) {
    Mono m = t.mono;
    Scalar c = t.coeff;
    for (int k = 0; k < m.x(last); ++k) c *= value;
    m.x(last) = 0;
    terms.push_back({m, c});
  }
  return WeylElement::from_terms(p.nvars() - 1, p.nweyl(), std::move(terms));
}

WeylElement embed(const WeylElement& p, int nvars, int nweyl) {
  if (nvars < p.nvars() || nweyl < p.nweyl())
    throw DimensionMismatch("embed: target ring is smaller");
  // Central variables of p (indices >= p.nweyl()) keep their index; this
  // is only valid when p has none or nweyl does not grow past them.
  for (const auto& t : p.terms())
    for (int i = p.nweyl(); i < nweyl && i < p.nvars(); ++i)
      if (t.mono.x(i)) throw DimensionMismatch("embed: central variable clash");
  std::vector<WeylTerm> terms(p.terms().begin(), p.terms().end());
  return WeylElement::from_terms(nvars, nweyl, std::move(terms));
}

WeylElement restrict_ring(const WeylElement& p, int nvars, int nweyl) {
  for (const auto& t : p.terms()) {
    for (int i = nvars; i < kMaxVars; ++i)
      if (t.mono.x(i)) throw InvalidInput("restrict_ring: variable still present");
    for (int i = nweyl; i < kMaxVars; ++i)
      if (t.mono.d(i)) throw InvalidInput("restrict_ring: derivation still present");
  }
  std::vector<WeylTerm> terms(p.terms().begin(), p.terms().end());
  return WeylElement::from_terms(nvars, nweyl, std::move(terms));
}

WeylElement v_leading_form(const WeylElement& p, FiltrationSpec spec) {
  long top = v_degree(p, spec);
  std::vector<WeylTerm> terms;
  for (const auto& t : p.terms())
    if (v_degree(t.mono, spec.d) == top) terms.push_back(t);
  return WeylElement::from_terms(p.nvars(), p.nweyl(), std::move(terms));
}

WeylElement pow(const WeylElement& p, unsigned k) {
  WeylElement r = WeylElement::constant(p.nvars(), p.nweyl(), 1);
  for (unsigned i = 0; i < k; ++i) r = r * p;
  return r;
}

WeylElement monic(const WeylElement& p) {
  if (p.is_zero()) return p;
  return p * (Scalar(1) / p.terms().front().coeff);
}

}  // namespace derham
