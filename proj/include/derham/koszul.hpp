#pragma once

// Graded Koszul slices: an independent oracle for truncation windows.
// Only V-homogeneous complexes whose graded pieces are finite dimensional
// are supported; the pieces are spanned by standard monomials.

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "derham/complex.hpp"
#include "derham/linalg.hpp"
#include "derham/unipoly.hpp"

namespace derham {

/// Complex of graded vector spaces L^i_j with x_l actions L^i_j -> L^i_{j-1}
/// (l < d) commuting with delta. Gradings outside [jlo, jhi] are unknown.
struct GradedComplexData {
  int d = 0;
  int lo = 0, hi = -1;
  long jlo = 0, jhi = -1;
  std::map<std::pair<int, long>, int> dim;
  std::map<std::pair<int, long>, RationalMatrix> delta;   // (i, j) -> (i + 1, j)
  std::map<std::tuple<int, int, long>, RationalMatrix> x;  // (l, i, j) -> (i, j - 1)
  std::map<std::pair<int, long>, RationalMatrix> theta;   // (i, j) -> (i, j); may be absent

  int dimension(int i, long j) const;
  /// Zero matrix of the right shape when the entry is absent.
  RationalMatrix delta_at(int i, long j) const;
  RationalMatrix x_at(int l, int i, long j) const;
};

/// Graded pieces j in [jlo, jhi] of a V_d-homogeneous complex of
/// presentations, enumerated with every exponent below `exponent_bound`.
/// Throws InvalidInput when a piece reaches the bound or a map is not
/// grading preserving.
GradedComplexData graded_pieces(const ChainComplexPres& c, FiltrationSpec spec, long jlo, long jhi,
                                int exponent_bound = 10);

/// The slice K(L; x_1..x_d)[k], built as d successive cones of x_m with the
/// sign (-1)^i on the x_m map out of degree i.
struct GradedKoszulComplex {
  int lo = 0;
  std::vector<int> dims;
  std::vector<RationalMatrix> maps;  // maps[t - lo] leaves degree t
  std::map<int, long> cohomology() const;
  bool exact() const;
};

/// Throws InvalidInput when [k, k + d] is not inside the known gradings.
GradedKoszulComplex graded_koszul(const GradedComplexData& L, FiltrationSpec spec, long k);

/// lcm over known gradings j and degrees i of p(s - j), p the minimal
/// polynomial of theta on the cohomology H^i_j.
ThetaPolynomial graded_b_function(const GradedComplexData& L);

}  // namespace derham
