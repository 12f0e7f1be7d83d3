#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

#include "derham/complex.hpp"
#include "derham/linalg.hpp"
#include "derham/unipoly.hpp"

namespace derham {

/// The b-function search ran past its degree bound.
class BBoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// [k0, k1]; empty when k0 > k1.
struct TruncationWindow {
  long k0 = 0;
  long k1 = -1;
  bool empty() const { return k0 > k1; }
  bool contains(const TruncationWindow& o) const {
    return o.empty() || (!empty() && k0 <= o.k0 && o.k1 <= k1);
  }
  bool operator==(const TruncationWindow&) const = default;
};

/// Smallest and largest integer root; empty without integer roots.
TruncationWindow integer_root_window(const ThetaPolynomial& b);
TruncationWindow hull(const TruncationWindow& a, const TruncationWindow& b);

/// Fourier transform of every relation and matrix entry.
ChainComplexPres fourier_complex(const ChainComplexPres& c);

/// Minimal monic p with p(theta) kappa in F^{lambda-1} + span(vgb), where
/// lambda is the shifted degree of kappa and vgb is a V-Groebner basis.
/// Works in gr^lambda, where reduction by leading forms terminates.
UniPoly theta_minimal_polynomial(const ModuleElement& kappa, const std::vector<ModuleElement>& vgb,
                                 FiltrationSpec spec, const ShiftVector& shift, int max_degree);

/// Minimal b with b(theta + j) gr^j = 0 for the presentation's own shift.
ThetaPolynomial restriction_b_function_module(const DModPresentation& pres, FiltrationSpec spec,
                                              int max_degree = 20);

struct BFunctionCertificate {
  bool annihilates = false;  // b(theta + lambda) e_i lies in F^{lambda-1} + relations
  bool minimal = false;      // dropping any integer-root factor breaks that
};
BFunctionCertificate certify_b_function(const DModPresentation& pres, FiltrationSpec spec,
                                        const ThetaPolynomial& b);

struct KernelGeneratorSet {
  int position = 0;
  std::vector<ModuleElement> kappa;
  std::vector<long> lambda;
  std::vector<UniPoly> b;  // per generator, unshifted
};

struct ComplexBFunction {
  ThetaPolynomial b;
  std::vector<KernelGeneratorSet> kernels;
};

/// lcm over kernel generators kappa of b_kappa(s - lambda) for a strict
/// free complex with shifts.
ComplexBFunction b_function_of_complex(const ChainComplexPres& A, FiltrationSpec spec,
                                       int max_degree = 20);

/// Basis element d^beta e_j of the restricted module.
struct RestrictedMonomial {
  int generator = 0;
  Mono beta;
};

struct TruncatedComplex {
  int lo = 0;
  std::vector<std::vector<RestrictedMonomial>> bases;
  std::vector<RationalMatrix> maps;  // maps[k - lo] leaves degree k
  int hi() const { return lo + static_cast<int>(bases.size()) - 1; }
};

/// F^{k1} / F^{k0-1} of (D / x D) tensor A. An empty window gives zero spaces.
TruncatedComplex omega_tensor_truncate(const ChainComplexPres& A, const TruncationWindow& w);

/// dim ker - rank in; throws Inconsistency when consecutive maps compose
/// to something nonzero.
std::map<int, long> cohomology_dims(const TruncatedComplex& t);

nlohmann::json to_json(const TruncatedComplex& t);

}  // namespace derham
