#include <doctest.h>

#include "derham/bernstein.hpp"
#include "derham/groebner.hpp"
#include "derham/parse.hpp"
#include "derham/presentations.hpp"
#include "random_ops.hpp"

using namespace derham;

namespace {

WeylElement poly(const std::string& s, const std::string& vars) {
  return parse_polynomial(s, VarNames::from_list(vars));
}
WeylElement op(const std::string& s, int n) { return parse_operator(s, VarNames::canonical(n)); }

UniPoly up(std::vector<Scalar> c) { return UniPoly(std::move(c)); }

// p / f^k as a pair; the operator acts by the quotient rule, so this is an
// oracle independent of every Groebner computation.
struct Fraction {
  WeylElement num;
  long k;
};

Fraction apply_d(int i, const Fraction& g, const WeylElement& f) {
  int n = f.nvars();
  WeylElement di = WeylElement::d(n, i);
  WeylElement dnum = apply_to_polynomial(di, g.num), df = apply_to_polynomial(di, f);
  return {dnum * f - g.num * df * WeylElement::constant(n, Scalar(g.k)), g.k + 1};
}

// P applied to f^e for e <= 0, with P = sum c x^a d^b normally ordered.
bool annihilates_power(const WeylElement& P, const WeylElement& f, long e) {
  int n = f.nvars();
  const long K = 64;
  WeylElement total(n);
  for (const auto& t : P.terms()) {
    Fraction g{WeylElement::constant(n, 1), -e};
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < t.mono.d(i); ++r) g = apply_d(i, g, f);
    Mono xa;
    for (int i = 0; i < n; ++i) xa.x(i) = t.mono.x(i);
    WeylElement term = WeylElement::monomial(n, n, xa, t.coeff) * g.num;
    REQUIRE(g.k <= K);
    total = total + term * pow(f, static_cast<unsigned>(K - g.k));
  }
  return total.is_zero();
}

}  // namespace

TEST_CASE("UniPoly arithmetic and integer roots") {
  UniPoly s = UniPoly::linear_root(0), s1 = UniPoly::linear_root(-1);
  CHECK((s * s1).to_string() == "s^2 + s");
  CHECK((s * s1).integer_roots() == std::vector<long>{-1, 0});
  CHECK(up({1, 0, 1}).integer_roots().empty());
  CHECK(UniPoly::constant(1).integer_roots().empty());
  CHECK(s.shifted(2) == UniPoly::linear_root(-2));
  CHECK(gcd(s * s1, s1 * UniPoly::linear_root(3)) == s1);
  CHECK(lcm(s, s1) == s * s1);
  UniPoly q, r;
  (s * s1 + UniPoly::constant(2)).divmod(s1, q, r);
  CHECK(q == s);
  CHECK(r == UniPoly::constant(2));
  CHECK(up({Scalar(35, 36), Scalar(107, 36), 3, 1}).integer_roots() == std::vector<long>{-1});
}

TEST_CASE("Bernstein-Sato polynomials of classical examples") {
  // derived by hand: x, a product of two simple roots, normal crossings and the cusp
  CHECK(bernstein_data(poly("x", "x")).b == UniPoly::linear_root(-1));
  CHECK(bernstein_data(poly("x*(x-1)", "x")).b == UniPoly::linear_root(-1));
  CHECK(bernstein_data(poly("x^2", "x")).b == UniPoly::linear_root(-1) * UniPoly::linear_root(Scalar(-1, 2)));
  CHECK(bernstein_data(poly("x*y", "x,y")).b == up({1, 2, 1}));
  BernsteinData cusp = bernstein_data(poly("y^2-x^3", "x,y"));
  CHECK(cusp.b == up({Scalar(35, 36), Scalar(107, 36), 3, 1}));
  CHECK(cusp.s0 == -1);
  CHECK(bernstein_data(poly("x*y*z", "x,y,z")).b == up({1, 3, 3, 1}));
  BernsteinData c = bernstein_data(poly("3", "x"));
  CHECK(c.b == UniPoly::constant(1));
  CHECK(c.s0 == 0);
  CHECK_THROWS_AS(bernstein_data(WeylElement(1)), InvalidInput);
  CHECK_THROWS_AS(bernstein_data(op("d1", 1)), InvalidInput);
}

TEST_CASE("annihilators of negative powers kill the rational function") {
  for (const char* f : {"x", "x*(x-1)", "x^2+1"}) {
    WeylElement p = poly(f, "x");
    BernsteinData data = bernstein_data(p);
    for (const auto& P : annihilator_of_power(data, data.s0)) CHECK(annihilates_power(P, p, data.s0));
  }
  for (const char* f : {"x*y", "y^2-x^3", "x+y", "x*y-1"}) {
    WeylElement p = poly(f, "x,y");
    BernsteinData data = bernstein_data(p);
    for (const auto& P : annihilator_of_power(data, data.s0)) CHECK(annihilates_power(P, p, data.s0));
    for (const auto& P : annihilator_of_power(data, data.s0 - 1)) CHECK(annihilates_power(P, p, data.s0 - 1));
  }
  BernsteinData x = bernstein_data(poly("x", "x"));
  CHECK_THROWS_AS(annihilator_of_power(x, 0), InvalidInput);
}

TEST_CASE("localize examples") {
  // (x d + 1) x^{-1} = 0
  DModPresentation rx = localize(poly("x", "x"));
  REQUIRE(rx.relations.size() >= 1);
  Lifter lx(rx.relations, 1, 1);
  CHECK(lx.contains(ModuleElement(std::vector<WeylElement>{op("x1*d1 + 1", 1)})));
  Lifter back({ModuleElement(std::vector<WeylElement>{op("x1*d1 + 1", 1)})}, 1, 1);
  for (const auto& r : rx.relations) CHECK(back.contains(r));

  DModPresentation ry = localize(poly("y", "x,y"));
  std::vector<ModuleElement> expected = {ModuleElement(std::vector<WeylElement>{op("x2*d2 + 1", 2)}),
                                         ModuleElement(std::vector<WeylElement>{op("d1", 2)})};
  Lifter le(expected, 1, 2), lr(ry.relations, 1, 2);
  for (const auto& r : ry.relations) CHECK(le.contains(r));
  for (const auto& r : expected) CHECK(lr.contains(r));

  DModPresentation r1 = localize(poly("1", "x"));
  Lifter l1(r1.relations, 1, 1);
  CHECK(l1.contains(ModuleElement(std::vector<WeylElement>{op("d1", 1)})));
  CHECK_FALSE(l1.contains(ModuleElement(std::vector<WeylElement>{op("1", 1)})));

  CHECK_THROWS_AS(localize(WeylElement(1)), InvalidInput);
}

TEST_CASE("LocalizationCache honours user-supplied annihilators") {
  LocalizationCache cache;
  WeylElement x = poly("x", "x");
  cache.provide(x, -1, {op("x1*d1 + 1", 1)});
  CHECK(cache.get(x).s0 == -1);
  CHECK_FALSE(cache.get(x).data.has_value());
  CHECK(cache.annihilator(x, -1).size() == 1);
  CHECK_THROWS_AS(cache.annihilator(x, -2), InvalidInput);
  // same text in a larger ring is a different entry
  CHECK(cache.get(poly("x", "x,y")).data.has_value());
  CHECK_THROWS_AS(cache.provide(WeylElement(1), -1, {}), InvalidInput);
}
