#pragma once

// Randomized property suites shared by the unit tests and the acceptance
// binary. Every suite is deterministic for a fixed seed and reports the
// first failing case verbatim.

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "derham/derham.hpp"
#include "derham/koszul.hpp"
#include "derham/parse.hpp"
#include "random_ops.hpp"

namespace derham::testing {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
  bool ok(int min_cases) const { return failures == 0 && cases >= min_cases; }
};

inline const std::vector<std::string>& polynomial_pool(int n) {
  static const std::vector<std::string> one = {"x1", "x1-1", "x1+1", "x1^2", "2*x1-1", "1", "x1^2+1"};
  static const std::vector<std::string> two = {"x1",  "x2",    "x1-1",  "x2+1",      "x1+x2",
                                               "x1-x2", "x1*x2", "1",    "x1^2-x2", "x1*x2-1"};
  return n == 1 ? one : two;
}

struct RandomFamily {
  int n = 0;
  std::vector<std::string> F;
  std::string describe() const {
    std::string s = "n=" + std::to_string(n) + " F={";
    for (std::size_t i = 0; i < F.size(); ++i) s += (i ? ", " : "") + F[i];
    return s + "}";
  }
  ProblemSpec spec() const {
    ProblemSpec p;
    p.n = n;
    for (const auto& f : F) p.F.push_back(parse_polynomial(f, VarNames::canonical(n)));
    return p;
  }
};

inline int total_degree(const WeylElement& f) {
  int deg = 0;
  for (const auto& t : f.terms()) deg = std::max(deg, t.mono.degree());
  return deg;
}

// Bernstein-Sato computations for the full product dominate the cost, so
// the product of all members is kept to degree at most 4 in two variables.
inline int max_product_degree(int n) { return n == 1 ? 6 : 4; }

inline std::string random_member(RandomOps& R, int n) {
  const auto& pool = polynomial_pool(n);
  return pool[R.uniform(0, static_cast<int>(pool.size()) - 1)];
}

inline int degree_of(const std::vector<std::string>& polys, int n) {
  int deg = 0;
  for (const auto& f : polys) deg += total_degree(parse_polynomial(f, VarNames::canonical(n)));
  return deg;
}

inline RandomFamily random_family(RandomOps& R) {
  RandomFamily fam;
  fam.n = R.uniform(1, 2);
  int r = R.uniform(1, 3);
  do {
    fam.F.clear();
    for (int i = 0; i < r; ++i) fam.F.push_back(random_member(R, fam.n));
  } while (degree_of(fam.F, fam.n) > max_product_degree(fam.n));
  return fam;
}

// ---- weyl-core ----

inline SuiteResult weyl_ring_suite(int cases, unsigned seed) {
  SuiteResult res{"Weyl associativity and commutation"};
  RandomOps R(seed);
  for (int it = 0; it < cases; ++it, ++res.cases) try {
    int n = R.uniform(1, 3);
    WeylElement p = R.op(n, 3, 2), q = R.op(n, 3, 2), r = R.op(n, 2, 2);
    if (!((p * q) * r == p * (q * r))) res.fail("associativity: " + p.to_string());
    int i = R.uniform(0, n - 1), j = R.uniform(0, n - 1);
    WeylElement di = WeylElement::d(n, i), xj = WeylElement::x(n, j);
    WeylElement comm = di * xj - xj * di;
    if (!(comm == WeylElement::constant(n, i == j ? 1 : 0)))
      res.fail("commutator [d" + std::to_string(i + 1) + ", x" + std::to_string(j + 1) + "]");
  } catch (const std::exception& e) {
    res.fail(std::string("exception: ") + e.what());
  }
  return res;
}

inline SuiteResult fourier_suite(int cases, unsigned seed) {
  SuiteResult res{"Fourier involution"};
  RandomOps R(seed);
  for (int it = 0; it < cases; ++it, ++res.cases) try {
    int n = R.uniform(1, 3);
    WeylElement p = R.op(n, 4, 3);
    WeylElement ff = fourier(fourier(p));
    std::vector<WeylTerm> twisted;
    for (const auto& t : p.terms()) twisted.push_back({t.mono, t.mono.degree() % 2 ? Scalar(-t.coeff) : t.coeff});
    if (!(ff == WeylElement::from_terms(n, n, twisted))) res.fail("F^2 is not the sign twist on " + p.to_string());
    if (!(fourier(fourier(ff)) == p)) res.fail("F^4 != id on " + p.to_string());
  } catch (const std::exception& e) {
    res.fail(std::string("exception: ") + e.what());
  }
  return res;
}

// ---- dmod-presentations ----

inline SuiteResult delta_squared_suite(int cases, unsigned seed) {
  SuiteResult res{"delta^2 = 0 on localization complexes"};
  RandomOps R(seed);
  LocalizationCache cache;
  for (int it = 0; it < cases; ++it, ++res.cases) try {
    RandomFamily fam = random_family(R);
    ProblemSpec p = fam.spec();
    std::vector<WeylElement> G;
    std::vector<std::string> all = fam.F;
    for (int s = R.uniform(0, 2); s > 0 && all.size() < 4; --s) {
      std::string g = random_member(R, fam.n);
      all.push_back(g);
      if (degree_of(all, fam.n) > max_product_degree(fam.n)) {
        all.pop_back();
        break;
      }
      G.push_back(parse_polynomial(g, VarNames::canonical(fam.n)));
    }
    LocalizationFamily F(fam.n, p.F);
    LocalizedComplex L = mv_tensor_cech(F, G, cache);
    if (!delta_squared_vanishes(L.complex)) res.fail(fam.describe() + " with |G|=" + std::to_string(G.size()));
    // the composites of the matrices themselves vanish, not only modulo relations
    for (int k = L.complex.lo; k + 1 < L.complex.hi(); ++k)
      if (!L.complex.d(k).then(L.complex.d(k + 1)).is_zero())
        res.fail(fam.describe() + ": matrix composite at degree " + std::to_string(k));
  } catch (const std::exception& e) {
    res.fail(std::string("exception: ") + e.what());
  }
  return res;
}

// ---- restriction ----

struct WindowFixture {
  std::string name;
  TwistedComplex tw;
  TruncationWindow window;
  std::map<int, long> dims;
};

inline std::vector<WindowFixture> window_fixtures() {
  struct Input {
    const char* vars;
    std::vector<const char*> F, G;
  };
  std::vector<Input> inputs = {{"x", {"x"}, {}},          {"x", {"x*(x-1)"}, {}},     {"x", {"x^2+1"}, {}},
                               {"x,y", {"x*y"}, {}},      {"x,y", {"x", "y"}, {}},    {"x,y", {"x^2+y^2-1"}, {}},
                               {"x,y", {"x"}, {"y"}},     {"x,y", {"y^2-x^3"}, {}}};
  std::vector<WindowFixture> out;
  for (const auto& in : inputs) {
    VarNames v = VarNames::from_list(in.vars);
    std::vector<WeylElement> F, G;
    for (auto f : in.F) F.push_back(parse_polynomial(f, v));
    for (auto g : in.G) G.push_back(parse_polynomial(g, v));
    LocalizationCache cache;
    LocalizedComplex L = mv_tensor_cech(LocalizationFamily(v.n(), F), G, cache);
    FiltrationSpec spec{v.n()};
    WindowFixture fx;
    fx.name = std::string(in.vars) + " " + in.F[0] + (in.G.empty() ? "" : " | support");
    fx.tw = v_strict_complex(fourier_complex(L.complex), spec, 2 * v.n() + 2);
    for (std::size_t s = 0; s < fx.tw.summands.size(); ++s) {
      ThetaPolynomial b = restriction_b_function_module(fx.tw.summands[s], spec).shifted(-fx.tw.shift_constant[s]);
      fx.window = hull(fx.window, integer_root_window(b));
    }
    fx.dims = cohomology_dims(omega_tensor_truncate(fx.tw.total, fx.window));
    out.push_back(std::move(fx));
  }
  return out;
}

inline SuiteResult window_widening_suite(int cases, unsigned seed) {
  SuiteResult res{"window-widening invariance"};
  RandomOps R(seed);
  auto fixtures = window_fixtures();
  for (int it = 0; it < cases; ++it, ++res.cases) try {
    const auto& fx = fixtures[R.uniform(0, static_cast<int>(fixtures.size()) - 1)];
    int a = R.uniform(0, 3), b = R.uniform(0, 3);
    if (fx.window.empty()) {
      // any window is wider than the empty one; the answer must stay zero
      long c = R.uniform(-2, 2);
      auto d = cohomology_dims(omega_tensor_truncate(fx.tw.total, {c - a, c + b}));
      for (auto [t, v] : d)
        if (v != 0) res.fail(fx.name + ": nonzero cohomology in a window around " + std::to_string(c));
      continue;
    }
    TruncationWindow w{fx.window.k0 - a, fx.window.k1 + b};
    auto d = cohomology_dims(omega_tensor_truncate(fx.tw.total, w));
    if (d != fx.dims)
      res.fail(fx.name + ": widening by (" + std::to_string(a) + ", " + std::to_string(b) + ") changed dims");
  } catch (const std::exception& e) {
    res.fail(std::string("exception: ") + e.what());
  }
  return res;
}

struct KoszulFixture {
  std::string name;
  ChainComplexPres complex;
  bool is_module = false;
};

inline DModPresentation cyclic_with_shift(int n, const std::vector<std::string>& rel, long shift) {
  std::vector<WeylElement> r;
  for (const auto& s : rel) r.push_back(parse_operator(s, VarNames::canonical(n)));
  DModPresentation p = DModPresentation::cyclic(n, r);
  p.shift = {shift};
  return p;
}

inline KoszulFixture random_koszul_fixture(RandomOps& R) {
  KoszulFixture fx;
  long m = R.uniform(-2, 2);
  int kind = R.uniform(0, 5);
  auto single = [&](int n, std::vector<std::string> rel) {
    fx.is_module = true;
    fx.complex.n = n;
    fx.complex.lo = 0;
    fx.complex.modules = {cyclic_with_shift(n, rel, m)};
    fx.name = "module <";
    for (std::size_t i = 0; i < rel.size(); ++i) fx.name += (i ? ", " : "") + rel[i];
    fx.name += "> shift " + std::to_string(m);
  };
  auto power = [&](const std::string& v) {
    int p = R.uniform(1, 2);
    return p == 1 ? v : v + "^2";
  };
  if (kind == 0) {
    single(1, {"x1*d1 - " + std::to_string(R.uniform(-3, 3))});
  } else if (kind == 1) {
    single(1, {R.uniform(0, 1) ? power("d1") : power("x1")});
  } else if (kind == 2) {
    single(2, {power("d1"), power("d2")});
  } else if (kind == 3) {
    single(2, {power("x1"), power("x2")});
  } else {
    // D/Dx d -> D/D d with 1 -> 1, or D/D(x d + 1) -> D/D(x d) with 1 -> d
    bool first = kind == 4;
    fx.complex.n = 1;
    fx.complex.lo = R.uniform(-1, 1);
    auto src = cyclic_with_shift(1, {first ? "x1*d1" : "x1*d1 + 1"}, m + (first ? 0 : 1));
    auto tgt = cyclic_with_shift(1, {first ? "d1" : "x1*d1"}, m);
    OperatorMatrix phi({ModuleElement(std::vector<WeylElement>{
                           parse_operator(first ? "1" : "d1", VarNames::canonical(1))})},
                       1, 1);
    fx.complex.modules = {src, tgt};
    fx.complex.differentials = {DModMap{phi}};
    fx.name = first ? "complex D/Dxd -> D/Dd" : "complex D/D(xd+1) -> D/Dxd";
    fx.name += " shift " + std::to_string(m);
  }
  return fx;
}

inline SuiteResult koszul_suite(int cases, unsigned seed) {
  SuiteResult res{"graded Koszul slices exact outside the root window"};
  RandomOps R(seed);
  const long jlo = -6, jhi = 6;
  for (int it = 0; it < cases; ++it, ++res.cases) try {
    KoszulFixture fx = random_koszul_fixture(R);
    FiltrationSpec spec{fx.complex.n};
    GradedComplexData L = graded_pieces(fx.complex, spec, jlo, jhi, 12);
    ThetaPolynomial oracle = graded_b_function(L);
    if (fx.is_module) {
      ThetaPolynomial lib = restriction_b_function_module(fx.complex.modules[0], spec);
      if (!(lib == oracle))
        res.fail(fx.name + ": b-function " + lib.to_string() + " but graded oracle " + oracle.to_string());
    }
    TruncationWindow w = integer_root_window(oracle);
    std::vector<long> ks;
    for (long k = jlo; k + spec.d <= jhi; ++k)
      if (w.empty() || k < w.k0 || k > w.k1) ks.push_back(k);
    if (ks.empty()) continue;
    long k = ks[R.uniform(0, static_cast<int>(ks.size()) - 1)];
    if (!graded_koszul(L, spec, k).exact())
      res.fail(fx.name + ": slice at k=" + std::to_string(k) + " is not exact");
  } catch (const std::exception& e) {
    res.fail(std::string("exception: ") + e.what());
  }
  return res;
}

// ---- derham-cli ----

class ChiCache {
 public:
  long chi(int n, const WeylElement& f) {
    std::string key = std::to_string(n) + ":" + f.to_string();
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    ProblemSpec p;
    p.n = n;
    p.F = {f};
    return memo_[key] = compute_derham(p).euler_characteristic();
  }

 private:
  std::map<std::string, long> memo_;
};

inline SuiteResult vanishing_suite(int cases, unsigned seed) {
  SuiteResult res{"dims[i] = 0 for i >= n + r"};
  RandomOps R(seed);
  ChiCache chis;
  for (int it = 0; it < cases; ++it, ++res.cases) try {
    RandomFamily fam = random_family(R);
    ProblemSpec p = fam.spec();
    ResultReport rep = compute_derham(p);
    const int n = fam.n, r = static_cast<int>(fam.F.size());
    for (auto [i, d] : rep.dims)
      if (i >= n + r && d != 0) res.fail(fam.describe() + ": H^" + std::to_string(i) + " != 0");
    if (rep.dims.at(0) != 1) res.fail(fam.describe() + ": H^0 != 1");
    // U is the union of the C^n minus Var(f_I); Euler characteristics obey inclusion-exclusion
    LocalizationFamily F(n, p.F);
    long chi = 0;
    for (int mask = 1; mask < (1 << r); ++mask) {
      std::vector<int> I;
      for (int i = 0; i < r; ++i)
        if (mask >> i & 1) I.push_back(i);
      long c = chis.chi(n, F.product(I));
      chi += (I.size() % 2 ? c : -c);
    }
    if (chi != rep.euler_characteristic())
      res.fail(fam.describe() + ": Euler characteristic " + std::to_string(rep.euler_characteristic()) +
               " but inclusion-exclusion gives " + std::to_string(chi));
  } catch (const std::exception& e) {
    res.fail(std::string("exception: ") + e.what());
  }
  return res;
}

inline SuiteResult exactness_suite(int cases, unsigned seed) {
  SuiteResult res{"exactness propagation on exact tails"};
  RandomOps R(seed);
  LocalizationCache cache;
  for (int it = 0; it < cases; ++it, ++res.cases) try {
    RandomFamily fam = random_family(R);
    ProblemSpec p = fam.spec();
    LocalizedComplex L = mv_complex(LocalizationFamily(fam.n, p.F), cache);
    // the localization complex is exact at every degree >= tail
    int tail = L.complex.hi() + 1;
    while (tail > L.complex.lo && is_zero_module(cohomology_presentation(L.complex, tail - 1).H)) --tail;
    ResultReport rep = compute_derham(p);
    for (auto [i, d] : rep.dims)
      if (i - fam.n >= tail && d != 0)
        res.fail(fam.describe() + ": exact from degree " + std::to_string(tail) + " but H^" +
                 std::to_string(i) + " = " + std::to_string(d));
  } catch (const std::exception& e) {
    res.fail(std::string("exception: ") + e.what());
  }
  return res;
}

}  // namespace derham::testing
