#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "derham/bernstein.hpp"
#include "derham/complex.hpp"

namespace derham {

/// Strictly increasing index set I (0-based) of a Mayer-Vietoris summand.
struct MVIndex {
  std::vector<int> I;
  /// Elementary transpositions needed to sort (I, j): elements of I above j.
  int sign_exponent(int j) const;
  MVIndex with(int j) const;
  bool contains(int j) const;
};

/// Ann_D f^e as a cyclic presentation, with a known or computed exponent.
struct LocalizationEntry {
  WeylElement f;
  long s0 = 0;                             // smallest exponent this entry supports
  std::optional<BernsteinData> data;       // absent for user-supplied entries
  std::vector<WeylElement> provided;       // user-supplied Ann f^{s0}
};

/// Memoizes localization data by the ring size and the monic canonical text of f.
class LocalizationCache {
 public:
  const LocalizationEntry& get(const WeylElement& f);
  /// Registers a user-supplied annihilator of f^e; f must be nonzero.
  void provide(const WeylElement& f, long e, std::vector<WeylElement> annihilator);
  /// Generators of Ann_D f^e; throws InvalidInput if e is not admissible.
  std::vector<WeylElement> annihilator(const WeylElement& f, long e);

 private:
  static std::string key(const WeylElement& f);
  std::map<std::string, LocalizationEntry> entries_;
};

/// D/Ann f^{s0} with generator label "f^s0"; s0 = 0 for nonzero constants.
DModPresentation localize(const WeylElement& f);
DModPresentation localize(const WeylElement& f, LocalizationCache& cache);

/// F = (f_1..f_r), nonzero polynomials, repeated entries kept verbatim.
class LocalizationFamily {
 public:
  LocalizationFamily(int n, std::vector<WeylElement> polys);
  int n() const { return n_; }
  int size() const { return static_cast<int>(polys_.size()); }
  const std::vector<WeylElement>& polys() const { return polys_; }
  WeylElement product(const std::vector<int>& I) const;

 private:
  int n_;
  std::vector<WeylElement> polys_;
};

/// Localization complex together with the bookkeeping the pipeline needs.
struct LocalizedComplex {
  ChainComplexPres complex;
  /// Summand products f_I * g_K per degree, aligned with the blocks.
  std::vector<std::vector<WeylElement>> products;
  /// Common exponent e: every summand is generated by its product to the e.
  long exponent = 0;
};

/// Total complex of MV(F) tensor C(G); degree t holds the summands
/// R_{f_I g_K} with |I| - 1 + |K| = t. An empty G gives MV(F).
LocalizedComplex mv_tensor_cech(const LocalizationFamily& F, const std::vector<WeylElement>& G,
                                LocalizationCache& cache);
LocalizedComplex mv_complex(const LocalizationFamily& F, LocalizationCache& cache);
LocalizedComplex cech_complex(int n, const std::vector<WeylElement>& G, LocalizationCache& cache);

ChainComplexPres mv_complex(const LocalizationFamily& F);
ChainComplexPres cech_complex(int n, const std::vector<WeylElement>& G);
ChainComplexPres mv_tensor_cech(const LocalizationFamily& F, const std::vector<WeylElement>& G);

/// Z^k, B^k and H^k = Z^k / B^k of a complex of presentations.
struct CohomologyPresentation {
  std::vector<ModuleElement> cycles;      // in the free cover of C^k
  std::vector<ModuleElement> boundaries;  // in the free cover of C^k
  DModPresentation H;                     // on the cycle generators
};
CohomologyPresentation cohomology_presentation(const ChainComplexPres& c, int k);

/// True when the presentation is the zero module.
bool is_zero_module(const DModPresentation& p);

/// Every source relation maps into the target relations.
bool map_well_defined(const DModPresentation& src, const DModPresentation& tgt,
                      const OperatorMatrix& m);
/// Consecutive composites land in the target relations.
bool delta_squared_vanishes(const ChainComplexPres& c);

nlohmann::json to_json(const DModPresentation& p);
nlohmann::json to_json(const OperatorMatrix& m);
nlohmann::json to_json(const ChainComplexPres& c);

}  // namespace derham
