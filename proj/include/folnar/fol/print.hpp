#pragma once

// Canonical ASCII rendering: ~  &  |  xor  ->  forall, single spaces around
// binary connectives, parentheses only where precedence requires them, and
// a mandatory parenthesized quantifier body. parse(to_canonical(f)) == f
// for any parser-produced formula.

#include <string>

#include "folnar/fol/ast.hpp"

namespace folnar::fol {

namespace detail {

inline int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Atom: return 6;
    case Formula::Kind::Not: return 5;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::Xor: return 2;
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::ForAll: return 0;
  }
  return 0;
}

inline const char* connective(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::And: return " & ";
    case Formula::Kind::Or: return " | ";
    case Formula::Kind::Xor: return " xor ";
    case Formula::Kind::Implies: return " -> ";
    default: return "";
  }
}

inline void render(const Formula& f, std::string& out);

inline void render_child(const Formula& child, bool parens, std::string& out) {
  if (parens) out += '(';
  render(child, out);
  if (parens) out += ')';
}

inline void render(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      out += f.predicate();
      out += '(';
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i > 0) out += ',';
        out += f.args()[i].name;
      }
      out += ')';
      return;
    }
    case Formula::Kind::Not: {
      out += '~';
      render_child(*f.operand(), precedence(f.operand()->kind()) < 5, out);
      return;
    }
    case Formula::Kind::ForAll: {
      out += "forall ";
      out += f.var();
      out += " (";
      render(*f.body(), out);
      out += ')';
      return;
    }
    case Formula::Kind::Implies: {
      // Right-associative: parenthesize an Implies on the left, not the right.
      render_child(*f.lhs(), precedence(f.lhs()->kind()) <= 1, out);
      out += connective(f.kind());
      render_child(*f.rhs(), precedence(f.rhs()->kind()) < 1, out);
      return;
    }
    default: {
      // Left-associative chain operators.
      int p = precedence(f.kind());
      render_child(*f.lhs(), precedence(f.lhs()->kind()) < p, out);
      out += connective(f.kind());
      render_child(*f.rhs(), precedence(f.rhs()->kind()) <= p, out);
      return;
    }
  }
}

}  // namespace detail

inline std::string to_canonical(const Formula& f) {
  std::string out;
  detail::render(f, out);
  return out;
}

inline std::string to_canonical(const FormulaPtr& f) { return to_canonical(*f); }

}  // namespace folnar::fol
