#pragma once

#include <string>
#include <vector>

#include "derham/weyl.hpp"

namespace derham {

class ParseError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Variable naming for the infix reader. `names[i]` is accepted for x_{i+1}
/// and "d" + names[i] for the matching derivation; the canonical spellings
/// x1..xn and d1..dn are always accepted as well.
struct VarNames {
  std::vector<std::string> names;

  static VarNames canonical(int n);
  /// Parses a comma separated list such as "x,y,z".
  static VarNames from_list(const std::string& list);
  int n() const { return static_cast<int>(names.size()); }
};

/// Reads an operator in infix form (+ - * / ^, parentheses, rational
/// literals). Products are taken in the Weyl algebra, so "d1*x1" is
/// x1*d1 + 1.
WeylElement parse_operator(const std::string& text, const VarNames& vars);

/// Same grammar, but derivations are rejected.
WeylElement parse_polynomial(const std::string& text, const VarNames& vars);

}  // namespace derham
