#pragma once

#include <optional>
#include <string>
#include <vector>

#include "derham/complex.hpp"
#include "derham/restriction.hpp"

namespace derham {

struct StrictnessFailure {
  int position = 0;  // target degree k of the map A^{k-1} -> A^k
  long degree = 0;   // filtration index j where im cap F^j exceeds the image of F^j
  ModuleElement witness;
  std::string reason;
};

struct StrictnessReport {
  bool adapted = true;  // every row lands in the shifted filtration of its target
  bool strict = true;
  TruncationWindow window;
  std::vector<StrictnessFailure> failures;
  bool ok() const { return adapted && strict; }
};

/// Checks im(phi) cap F^j = phi(F^j) at every position for j in the window,
/// one image V-Groebner element at a time: an element g of degree j needs a
/// preimage of degree j. Default window: [min shift - 2, max shift + 2].
StrictnessReport verify_v_strict(const ChainComplexPres& A, FiltrationSpec spec,
                                 std::optional<TruncationWindow> window = std::nullopt);

/// Total complex D[1]+D[1] -> D[0] with rows d1 and d1 - 1: strict rows and
/// columns, but 1 = 1*d1 - 1*(d1 - 1) has no preimage of degree 0.
ChainComplexPres strictness_counterexample();

/// Free replacement of a complex of direct sums of presentations.
/// Each summand gets its own V-strict resolution; maps between summands
/// are lifted (with higher homotopies for column jumps above one) and
/// every summand's shifts are raised by a constant so that all components
/// are V-adapted.
struct TwistedComplex {
  ChainComplexPres total;
  std::vector<DModPresentation> summands;       // input blocks, flattened
  std::vector<int> column;                      // input degree of each summand
  std::vector<ChainComplexPres> resolutions;    // unshifted, per summand
  std::vector<long> shift_constant;             // per summand
  bool resolutions_complete = true;             // every resolution reached a zero kernel
};

TwistedComplex v_strict_complex(const ChainComplexPres& c, FiltrationSpec spec, int max_length);

}  // namespace derham
