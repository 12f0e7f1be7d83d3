#pragma once

#include <vector>

#include "derham/unipoly.hpp"
#include "derham/weyl.hpp"

namespace derham {

/// Data attached to one polynomial f in n variables.
struct BernsteinData {
  int n = 0;
  WeylElement f;
  /// Generators of Ann_{D[s]} f^s, living in the ring with n Weyl pairs
  /// plus the central variable s at index n.
  std::vector<WeylElement> ann_s;
  /// Global b-function, monic; 1 for nonzero constants.
  UniPoly b;
  /// Smallest integer root of b (0 when there is none).
  long s0 = 0;
};

/// Annihilator by elimination of u, v from the ideal generated by
/// t - u f, d_i + u f_i d_t and u v - 1, then the b-function by
/// eliminating x and d from Ann + (f). Throws InvalidInput for f = 0.
BernsteinData bernstein_data(const WeylElement& f);

/// Generators of Ann_D f^e, valid whenever no integer below e+1 is a root
/// of b, i.e. e <= s0.
std::vector<WeylElement> annihilator_of_power(const BernsteinData& data, long e);

}  // namespace derham
