#pragma once

#include "trilab/rational.hpp"

#include <memory>
#include <string>

namespace trilab {

/// Arithmetic over exact rationals in the two node variables.
/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := '-' unary | atom
///   atom   := integer | 'n' | 'k' | '(' expr ')'
class Expr {
 public:
  static Expr parse(const std::string& text);  // throws std::invalid_argument
  Rat eval(long n, long k) const;              // throws std::domain_error on /0
  const std::string& text() const { return text_; }

  struct Node;  // defined in the implementation file only

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace trilab
