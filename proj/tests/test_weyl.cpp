#include <doctest.h>

#include "derham/parse.hpp"
#include "derham/weyl.hpp"
#include "random_ops.hpp"

using namespace derham;
using derham::testing::RandomOps;

namespace {

WeylElement op(const std::string& s, int n = 2) { return parse_operator(s, VarNames::canonical(n)); }

// x^k as a commutative polynomial in n variables
WeylElement xpow(int n, int i, int k) { return pow(WeylElement::x(n, i), k); }

}  // namespace

TEST_CASE("weyl_mul: canonical commutation and hand-checked products") {
  WeylElement x1 = WeylElement::x(1, 0), d1 = WeylElement::d(1, 0);
  CHECK((d1 * x1).to_string() == "x1*d1 + 1");
  CHECK(d1 * x1 - x1 * d1 == WeylElement::constant(1, 1));
  WeylElement e = x1 * d1;
  CHECK(e * e == op("x1^2*d1^2 + x1*d1", 1));
  CHECK((e * WeylElement(1)).is_zero());
  CHECK_THROWS_AS(weyl_mul(WeylElement(1), WeylElement(2)), DimensionMismatch);
}

TEST_CASE("weyl_mul: (x d)^2 agrees with its action on monomials") {
  WeylElement e = WeylElement::x(1, 0) * WeylElement::d(1, 0);
  WeylElement sq = e * e;
  for (int k = 0; k < 8; ++k) {
    WeylElement g = xpow(1, 0, k);
    CHECK(apply_to_polynomial(sq, g) == g * Scalar(k * k));
  }
}

TEST_CASE("canonical text form") {
  CHECK(op("3*x1^2*d1 - 1/2*d2").to_string() == "3*x1^2*d1 - 1/2*d2");
  CHECK(op("-d2/2 + 3*d1*x1^2").to_string() == "3*x1^2*d1 + 6*x1 - 1/2*d2");
  CHECK(WeylElement(2).to_string() == "0");
  CHECK(WeylElement::constant(2, Scalar(-3, 4)).to_string() == "-3/4");
  CHECK(parse_operator("x*dy", VarNames::from_list("x,y")).to_string() == "x1*d2");
}

TEST_CASE("v_degree examples") {
  CHECK(v_degree(op("x1*x2*d1"), FiltrationSpec{2}, 0) == -1);
  CHECK(v_degree(op("1"), FiltrationSpec{0}, 0) == 0);
  CHECK(v_degree(op("1"), FiltrationSpec{2}, 0) == 0);
  CHECK(v_degree(op("d1^2"), FiltrationSpec{1}, 3) == 5);
  CHECK(v_degree(WeylElement(2), FiltrationSpec{2}, 0) == kMinusInfinity);
  // x2 is outside H for d = 1
  CHECK(v_degree(op("x2^5*d1"), FiltrationSpec{1}, 0) == 1);
}

TEST_CASE("fourier examples") {
  CHECK(fourier(op("x1", 1)) == op("d1", 1));
  CHECK(fourier(op("d1", 1)) == op("-x1", 1));
  CHECK(fourier(op("x1*d1", 1)) == op("-x1*d1 - 1", 1));
}

TEST_CASE("theta") {
  CHECK(theta(2, FiltrationSpec{1}) == op("x1*d1"));
  CHECK(theta(2, FiltrationSpec{2}) == op("x1*d1 + x2*d2"));
  CHECK_THROWS_AS(theta(2, FiltrationSpec{0}), InvalidInput);
}

TEST_CASE("apply_to_polynomial examples") {
  CHECK(apply_to_polynomial(op("d1", 1), op("x1^2", 1)) == op("2*x1", 1));
  for (int k = 0; k < 6; ++k)
    CHECK(apply_to_polynomial(op("x1*d1", 1), xpow(1, 0, k)) == xpow(1, 0, k) * Scalar(k));
  WeylElement comm = op("d1*x1 - x1*d1", 2);
  WeylElement g = op("3*x1^2*x2 - x2^3 + 7", 2);
  CHECK(apply_to_polynomial(comm, g) == g);
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_operator("x1 +", VarNames::canonical(1)), ParseError);
  CHECK_THROWS_AS(parse_operator("z", VarNames::canonical(1)), ParseError);
  CHECK_THROWS_AS(parse_operator("x1/x1", VarNames::canonical(1)), ParseError);
  CHECK_THROWS_AS(parse_polynomial("d1", VarNames::canonical(1)), ParseError);
  CHECK_THROWS_AS(VarNames::from_list("x,x"), InvalidInput);
  CHECK(parse_polynomial("(x-1)^2", VarNames::from_list("x")) == op("x1^2 - 2*x1 + 1", 1));
}

TEST_CASE("property: ring axioms on random operators (300 cases)") {
  RandomOps R(11);
  for (int iter = 0; iter < 300; ++iter) {
    int n = R.uniform(1, 3);
    WeylElement p = R.op(n, 3, 2), q = R.op(n, 3, 2), r = R.op(n, 2, 2);
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK((q + r) * p == q * p + r * p);
    CHECK(WeylElement::constant(n, 1) * p == p);
    for (int i = 0; i < n; ++i)
      CHECK(WeylElement::d(n, i) * WeylElement::x(n, i) - WeylElement::x(n, i) * WeylElement::d(n, i) ==
            WeylElement::constant(n, 1));
  }
}

TEST_CASE("property: action is a module structure (300 cases)") {
  RandomOps R(12);
  for (int iter = 0; iter < 300; ++iter) {
    int n = R.uniform(1, 3);
    WeylElement p = R.op(n, 3, 2), q = R.op(n, 3, 2), g = R.poly(n, 4, 3);
    CHECK(apply_to_polynomial(p * q, g) == apply_to_polynomial(p, apply_to_polynomial(q, g)));
  }
}

TEST_CASE("property: v_degree is additive on monomials (300 cases)") {
  RandomOps R(13);
  for (int iter = 0; iter < 300; ++iter) {
    int n = R.uniform(1, 3);
    int d = R.uniform(0, n);
    WeylElement p = WeylElement::monomial(n, n, R.mono(n, 3), R.coeff());
    WeylElement q = WeylElement::monomial(n, n, R.mono(n, 3), R.coeff());
    FiltrationSpec s{d};
    CHECK(v_degree(p * q, s, 0) == v_degree(p, s, 0) + v_degree(q, s, 0));
  }
}

TEST_CASE("property: fourier has order four and negates V-degree (300 cases)") {
  RandomOps R(14);
  for (int iter = 0; iter < 300; ++iter) {
    int n = R.uniform(1, 3);
    WeylElement p = R.op(n, 4, 3);
    WeylElement ff = fourier(fourier(p));
    std::vector<WeylTerm> neg;
    for (const auto& t : p.terms()) {
      int deg = t.mono.degree();
      neg.push_back({t.mono, deg % 2 ? Scalar(-t.coeff) : t.coeff});
    }
    CHECK(ff == WeylElement::from_terms(n, n, neg));
    CHECK(fourier(fourier(ff)) == p);
    CHECK(fourier(p * ff) == fourier(p) * fourier(ff));
    WeylElement m = WeylElement::monomial(n, n, R.mono(n, 3), 1);
    CHECK(v_degree(fourier(m), FiltrationSpec{n}, 0) == -v_degree(m, FiltrationSpec{n}, 0));
  }
}

TEST_CASE("property: canonical text round-trips through the parser (300 cases)") {
  RandomOps R(15);
  for (int iter = 0; iter < 300; ++iter) {
    int n = R.uniform(1, 4);
    WeylElement p = R.op(n, 4, 3);
    CHECK(parse_operator(p.to_string(), VarNames::canonical(n)) == p);
  }
}
