#include "derham/parse.hpp"

#include <cctype>
#include <sstream>

namespace derham {

VarNames VarNames::canonical(int n) {
  VarNames v;
  for (int i = 0; i < n; ++i) v.names.push_back("x" + std::to_string(i + 1));
  return v;
}

VarNames VarNames::from_list(const std::string& list) {
  VarNames v;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string name;
    for (char c : item)
      if (!std::isspace(static_cast<unsigned char>(c))) name += c;
    if (name.empty()) throw ParseError("empty variable name in '" + list + "'");
    if (!std::isalpha(static_cast<unsigned char>(name[0])))
      throw ParseError("variable name must start with a letter: " + name);
    for (const auto& other : v.names)
      if (other == name) throw ParseError("duplicate variable " + name);
    v.names.push_back(name);
  }
  if (v.names.empty()) throw ParseError("no variables declared");
  if (v.n() > kMaxVars - 2)
    throw ParseError("at most " + std::to_string(kMaxVars - 2) + " variables supported");
  return v;
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, const VarNames& vars, bool allow_d)
      : s_(text), vars_(vars), n_(vars.n()), allow_d_(allow_d) {}

  WeylElement run() {
    WeylElement e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("parse error at position " + std::to_string(pos_) + " in '" +
                     s_ + "': " + msg);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  WeylElement expr() {
    WeylElement acc(n_);
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    WeylElement t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else break;
    }
    return acc;
  }

  WeylElement term() {
    WeylElement acc = power();
    for (;;) {
      if (eat('*')) {
        acc = acc * power();
      } else if (eat('/')) {
        WeylElement den = power();
        if (!den.is_constant() || den.is_zero()) fail("division by a non-constant or zero");
        acc = acc * (Scalar(1) / den.constant_term());
      } else {
        break;
      }
    }
    return acc;
  }

  WeylElement power() {
    WeylElement base = atom();
    if (eat('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long k = std::stoul(s_.substr(start, pos_ - start));
      if (k > 1000) fail("exponent too large");
      base = pow(base, static_cast<unsigned>(k));
    }
    return base;
  }

  WeylElement atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      WeylElement e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (c == '-') {
      ++pos_;
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return WeylElement::constant(n_, Scalar(mpz_class(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return variable(s_.substr(start, pos_ - start));
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  WeylElement variable(const std::string& name) {
    for (int i = 0; i < n_; ++i) {
      if (name == vars_.names[i]) return WeylElement::x(n_, i);
    }
    for (int i = 0; i < n_; ++i) {
      if (name == "d" + vars_.names[i] || name == "D" + vars_.names[i]) return deriv(i, name);
    }
    for (int i = 0; i < n_; ++i) {
      if (name == "x" + std::to_string(i + 1)) return WeylElement::x(n_, i);
      if (name == "d" + std::to_string(i + 1)) return deriv(i, name);
    }
    fail("unknown variable '" + name + "'");
  }

  WeylElement deriv(int i, const std::string& name) {
    if (!allow_d_) fail("derivation '" + name + "' not allowed in a polynomial");
    return WeylElement::d(n_, i);
  }

  std::string s_;
  const VarNames& vars_;
  int n_;
  bool allow_d_;
  std::size_t pos_ = 0;
};

}  // namespace

WeylElement parse_operator(const std::string& text, const VarNames& vars) {
  return Parser(text, vars, true).run();
}

WeylElement parse_polynomial(const std::string& text, const VarNames& vars) {
  return Parser(text, vars, false).run();
}

}  // namespace derham
