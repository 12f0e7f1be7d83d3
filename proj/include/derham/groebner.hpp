#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "derham/complex.hpp"
#include "derham/engine.hpp"

namespace derham {

enum class TieBreak { GrevlexThenPosition };

/// Shifted V_d-degree first, then total degree, reverse lexicographic on
/// (alpha, beta), then generator position.
struct TermOrder {
  FiltrationSpec filtration;
  ShiftVector shift;
  TieBreak tie_break = TieBreak::GrevlexThenPosition;
};

std::string describe(const TermOrder& order);

struct GroebnerBasis {
  int n = 0;
  int rank = 0;
  TermOrder order;
  std::vector<ModuleElement> elements;
  /// Graded basis of the same submodule, used to decide membership.
  std::shared_ptr<const std::vector<ModuleElement>> graded;
};

engine::EngineOrder make_engine_order(int n, int rank, const TermOrder& order, bool homogenized);

GroebnerBasis groebner_basis(const std::vector<ModuleElement>& gens, const TermOrder& order,
                             int rank, int n);
GroebnerBasis groebner_basis(const std::vector<ModuleElement>& gens, const TermOrder& order);

/// Full reduction. Under a V-refining order the tail reduction may descend
/// forever; it is capped and the partially reduced tail is returned.
ModuleElement normal_form(const ModuleElement& e, const GroebnerBasis& gb);
bool submodule_membership(const ModuleElement& e, const GroebnerBasis& gb);

std::vector<ModuleElement> syzygies(const GroebnerBasis& gb);
std::vector<ModuleElement> kernel_of_map(const OperatorMatrix& phi);

/// Shifted V-degree of each row image; zero rows get 0 with a warning.
ShiftVector obvious_shift(const OperatorMatrix& phi, const ShiftVector& target_shift,
                          FiltrationSpec spec);

/// Free V-strict resolution ... -> A^{-1} -> A^0 -> pres of `length` steps,
/// stored with lo = -length' and top module A^0 (degree 0).
ChainComplexPres v_strict_resolution(const DModPresentation& pres, const ShiftVector& m0,
                                     int length, FiltrationSpec spec);
ChainComplexPres v_strict_resolution(const DModPresentation& pres, const ShiftVector& m0,
                                     int length);

// ---- tools shared by the higher modules ----

struct KernelImage {
  std::vector<ModuleElement> kernel;           // V-GB, source shifts
  std::vector<ModuleElement> image;            // V-GB, target shifts
  std::vector<ModuleElement> image_cofactors;  // image[k] = cofactors[k] * rows
};

/// One homogenized elimination run on [rows | I].
KernelImage kernel_and_image(const std::vector<ModuleElement>& rows, int cols, int n,
                             FiltrationSpec spec, const ShiftVector& source_shift,
                             const ShiftVector& target_shift);

/// Expresses vectors through a fixed generating list.
class Lifter {
 public:
  Lifter(std::vector<ModuleElement> gens, int rank, int n);
  /// c with y = sum c_i gens_i, or nullopt when y is outside the span.
  std::optional<ModuleElement> lift(const ModuleElement& y) const;
  bool contains(const ModuleElement& y) const;
  int size() const { return static_cast<int>(gens_.size()); }

 private:
  std::vector<ModuleElement> gens_;
  int rank_;
  int n_;
  engine::EngineOrder ord_;
  engine::EngineOrder cord_;
  std::vector<engine::Tracked> basis_;
  std::vector<engine::Tracked> bare_;  // basis_ without cofactors
};

/// Top-reduces y by a V-GB until its shifted V-degree is <= target or its
/// leading monomial is irreducible. Returns the reduced representative;
/// `cofactor` (when non-null) receives c with y - result = sum c_i gb_i.
ModuleElement reduce_v_degree(const ModuleElement& y, const std::vector<ModuleElement>& vgb,
                              FiltrationSpec spec, const ShiftVector& shift, long target,
                              ModuleElement* cofactor = nullptr);

/// max(floor, minimal shifted V-degree over the coset y + span(vgb)).
/// kMinusInfinity only for y = 0.
long minimal_v_degree(const ModuleElement& y, const std::vector<ModuleElement>& vgb,
                      FiltrationSpec spec, const ShiftVector& shift, long floor);

}  // namespace derham
