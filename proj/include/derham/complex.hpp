#pragma once

#include <string>
#include <vector>

#include "derham/module.hpp"

namespace derham {

/// D_n^rank / <relations>, optionally with a V-filtration shift.
struct DModPresentation {
  int n = 0;
  int rank = 0;
  ShiftVector shift;
  std::vector<ModuleElement> relations;
  /// Ranks of direct summands when the module is a direct sum (empty
  /// means a single block); relations never mix blocks.
  std::vector<int> blocks;
  /// Per-generator description, e.g. "(x1*x2)^-1" for a localization.
  std::vector<std::string> generator_labels;

  static DModPresentation free(int n, int rank, ShiftVector shift = {});
  static DModPresentation cyclic(int n, std::vector<WeylElement> relations);
  bool is_free() const { return relations.empty(); }
  ShiftVector shift_or_zero() const {
    return shift.empty() ? ShiftVector(rank, 0) : shift;
  }
  int block_count() const { return blocks.empty() ? 1 : static_cast<int>(blocks.size()); }
  int block_offset(int b) const;
  /// Summand b as a presentation of its own.
  DModPresentation block(int b) const;
};

DModPresentation direct_sum(const std::vector<DModPresentation>& parts, int n);

/// Morphism of presentations given on generators.
struct DModMap {
  OperatorMatrix matrix;
};

/// Cohomological complex C^lo -> ... -> C^hi; differentials[k] is
/// C^{lo+k} -> C^{lo+k+1}, so there are hi - lo of them.
struct ChainComplexPres {
  int n = 0;
  int lo = 0;
  std::vector<DModPresentation> modules;
  std::vector<DModMap> differentials;

  int hi() const { return lo + static_cast<int>(modules.size()) - 1; }
  const DModPresentation& at(int k) const { return modules.at(k - lo); }
  /// Differential leaving degree k.
  const OperatorMatrix& d(int k) const { return differentials.at(k - lo).matrix; }
  bool is_free() const;
};

}  // namespace derham
