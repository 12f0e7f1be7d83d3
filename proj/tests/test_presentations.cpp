#include <doctest.h>

#include "derham/groebner.hpp"
#include "derham/parse.hpp"
#include "derham/presentations.hpp"
#include "property_suites.hpp"

using namespace derham;

namespace {

WeylElement poly(const std::string& s, const std::string& vars) {
  return parse_polynomial(s, VarNames::from_list(vars));
}
WeylElement op(const std::string& s, int n) { return parse_operator(s, VarNames::canonical(n)); }

DModPresentation cyclic(int n, const std::string& rel) { return DModPresentation::cyclic(n, {op(rel, n)}); }

OperatorMatrix one_by_one(const WeylElement& e) {
  return OperatorMatrix({ModuleElement(std::vector<WeylElement>{e})}, 1, e.nvars());
}

}  // namespace

TEST_CASE("MVIndex signs count the transpositions needed to sort") {
  MVIndex a{{0, 2}};
  CHECK(a.sign_exponent(1) == 1);
  CHECK(a.sign_exponent(3) == 0);
  CHECK(a.with(1).I == std::vector<int>{0, 1, 2});
  CHECK(a.contains(2));
  CHECK_THROWS_AS(a.with(2), InvalidInput);
}

TEST_CASE("LocalizationFamily rejects malformed input") {
  CHECK_THROWS_AS(LocalizationFamily(0, {WeylElement::constant(1, 1)}), InvalidInput);
  CHECK_THROWS_AS(LocalizationFamily(1, {}), InvalidInput);
  CHECK_THROWS_AS(LocalizationFamily(1, {WeylElement(1)}), InvalidInput);
  CHECK_THROWS_AS(LocalizationFamily(1, {op("d1", 1)}), InvalidInput);
  LocalizationFamily f(2, {poly("x", "x,y"), poly("x", "x,y")});
  CHECK(f.size() == 2);  // repeated entries are kept
  CHECK(f.product({0, 1}) == poly("x^2", "x,y"));
}

TEST_CASE("one polynomial gives the single module R_f") {
  LocalizationCache cache;
  LocalizedComplex L = mv_complex(LocalizationFamily(1, {poly("x", "x")}), cache);
  CHECK(L.complex.lo == 0);
  CHECK(L.complex.hi() == 0);
  CHECK(L.exponent == -1);
  CHECK(L.complex.at(0).rank == 1);
}

TEST_CASE("MV complex of {x, y}: natural maps with alternating signs") {
  LocalizationCache cache;
  LocalizedComplex L = mv_complex(LocalizationFamily(2, {poly("x", "x,y"), poly("y", "x,y")}), cache);
  REQUIRE(L.complex.modules.size() == 2);
  CHECK(L.exponent == -1);
  CHECK(L.complex.at(0).rank == 2);
  CHECK(L.complex.at(0).block_count() == 2);
  CHECK(L.complex.at(1).rank == 1);
  // x^{-1} = y (xy)^{-1} and y^{-1} = x (xy)^{-1}, the second with sign -1
  const OperatorMatrix& d = L.complex.d(0);
  CHECK(d.at(0, 0) == poly("y", "x,y"));
  CHECK(d.at(1, 0) == -poly("x", "x,y"));
  CHECK(delta_squared_vanishes(L.complex));
  CHECK(map_well_defined(L.complex.at(0), L.complex.at(1), d));
}

TEST_CASE("Cech complex and the tensor product with MV") {
  LocalizationCache cache;
  LocalizedComplex C = cech_complex(2, {poly("x", "x,y"), poly("y", "x,y")}, cache);
  // R -> R_x + R_y -> R_xy
  REQUIRE(C.complex.modules.size() == 3);
  CHECK(C.complex.at(0).rank == 1);
  CHECK(C.complex.at(1).rank == 2);
  CHECK(C.complex.at(2).rank == 1);
  CHECK(delta_squared_vanishes(C.complex));

  LocalizedComplex T =
      mv_tensor_cech(LocalizationFamily(2, {poly("x", "x,y"), poly("x-1", "x,y")}), {poly("y", "x,y")}, cache);
  // |I| - 1 + |K| = t: degree 0 has R_x, R_{x-1}; degree 1 has R_{x(x-1)}, R_{xy}, R_{(x-1)y}
  CHECK(T.complex.at(0).rank == 2);
  CHECK(T.complex.at(1).rank == 3);
  CHECK(T.complex.at(2).rank == 1);
  CHECK(delta_squared_vanishes(T.complex));
}

TEST_CASE("cohomology_presentation examples") {
  LocalizationCache cache;
  // partial fractions: R_x + R_{x-1} = R_{x(x-1)}, and R_x cap R_{x-1} = R
  LocalizedComplex A = mv_complex(LocalizationFamily(1, {poly("x", "x"), poly("x-1", "x")}), cache);
  CHECK(is_zero_module(cohomology_presentation(A.complex, 1).H));
  auto h0 = cohomology_presentation(A.complex, 0);
  CHECK_FALSE(is_zero_module(h0.H));

  // R_xy / (R_x + R_y) is the local cohomology at the origin, nonzero
  LocalizedComplex B = mv_complex(LocalizationFamily(2, {poly("x", "x,y"), poly("y", "x,y")}), cache);
  CHECK_FALSE(is_zero_module(cohomology_presentation(B.complex, 1).H));

  // boundaries are cycles
  auto h = cohomology_presentation(B.complex, 1);
  Lifter cyc(h.cycles, B.complex.at(1).rank, 2);
  for (const auto& b : h.boundaries) CHECK(cyc.contains(b));
}

TEST_CASE("is_zero_module and map_well_defined") {
  CHECK(is_zero_module(cyclic(1, "1")));
  CHECK(is_zero_module(DModPresentation::cyclic(1, {op("x1", 1), op("d1", 1)})));
  CHECK_FALSE(is_zero_module(cyclic(1, "d1")));
  CHECK_FALSE(is_zero_module(DModPresentation::free(2, 1)));
  // D/Dxd -> D/Dd, 1 -> 1 is well defined; the reverse is not
  CHECK(map_well_defined(cyclic(1, "x1*d1"), cyclic(1, "d1"), one_by_one(op("1", 1))));
  CHECK_FALSE(map_well_defined(cyclic(1, "d1"), cyclic(1, "x1*d1"), one_by_one(op("1", 1))));
  // D/D(xd + 1) -> D/D(xd), 1 -> d
  CHECK(map_well_defined(cyclic(1, "x1*d1 + 1"), cyclic(1, "x1*d1"), one_by_one(op("d1", 1))));
}

TEST_CASE("presentations serialize to JSON with canonical text") {
  DModPresentation p = cyclic(1, "x1*d1 + 1");
  auto j = to_json(p);
  CHECK(j["rank"] == 1);
  CHECK(j["relations"][0][0] == "x1*d1 + 1");
  LocalizationCache cache;
  auto c = to_json(mv_complex(LocalizationFamily(2, {poly("x", "x,y"), poly("y", "x,y")}), cache).complex);
  CHECK(c["lo"] == 0);
  CHECK(c["hi"] == 1);
  CHECK(c["differentials"][0][1][0] == "-x1");
}

TEST_CASE("property: delta^2 = 0 on random localization complexes (200 cases)") {
  auto r = derham::testing::delta_squared_suite(200, 31);
  INFO(r.first_failure);
  CHECK(r.cases >= 200);
  CHECK(r.failures == 0);
}
