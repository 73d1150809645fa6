#pragma once

// Textual Narsese emission. The byte layout is load-bearing: engines and
// the golden tests compare full lines, so spacing and bracket choices here
// are fixed. Inheritance renders in angle form (<S --> P>) everywhere
// except as a conjunction part, where it renders in paren form (S --> P).
// A conjunction renders left-associated; the wrapper is <...> when the
// conjunction is an implication antecedent and (...) elsewhere.

#include <string>

#include "folnar/narsese/ast.hpp"

namespace folnar::narsese {

namespace detail {

inline std::string term_text(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Individual:
      return "{" + t.name() + "}";
    case Term::Kind::Variable:
      return "$" + std::to_string(t.index());
    case Term::Kind::Predicate:
      return t.name();
    case Term::Kind::Product:
      return "(" + term_text(*t.left()) + " * " + term_text(*t.right()) + ")";
  }
  return {};
}

inline std::string inheritance_text(const Statement& s, char open, char close) {
  return open + term_text(*s.subject()) + " --> " + term_text(*s.attribute()) +
         close;
}

inline std::string statement_text(const Statement& s);

inline std::string conjunct_text(const Statement& s) {
  if (s.kind() == Statement::Kind::Inheritance) {
    return inheritance_text(s, '(', ')');
  }
  return statement_text(s);
}

inline std::string conjunction_text(const Statement& s, char open, char close) {
  const auto& parts = s.parts();
  std::string acc = conjunct_text(*parts[0]);
  for (std::size_t i = 1; i + 1 < parts.size(); ++i) {
    acc = "(" + acc + " && " + conjunct_text(*parts[i]) + ")";
  }
  return open + acc + " && " + conjunct_text(*parts.back()) + close;
}

inline std::string statement_text(const Statement& s) {
  switch (s.kind()) {
    case Statement::Kind::Inheritance:
      return inheritance_text(s, '<', '>');
    case Statement::Kind::Negation:
      return "(-- " + statement_text(*s.inner()) + ")";
    case Statement::Kind::Conjunction:
      return conjunction_text(s, '(', ')');
    case Statement::Kind::Implication: {
      const Statement& ant = *s.antecedent();
      std::string left = ant.kind() == Statement::Kind::Conjunction
                             ? conjunction_text(ant, '<', '>')
                             : statement_text(ant);
      return "<" + left + " ==> " + statement_text(*s.consequent()) + ">";
    }
  }
  return {};
}

}  // namespace detail

inline std::string serialize(const Statement& s) {
  return detail::statement_text(s);
}

inline std::string serialize(const Sentence& s) {
  return detail::statement_text(*s.statement) +
         (s.punctuation == Punctuation::Question ? "?" : ".");
}

inline std::vector<std::string> program_lines(const Program& p) {
  std::vector<std::string> out;
  out.reserve(p.judgments.size() + 1);
  for (const auto& j : p.judgments) out.push_back(serialize(j));
  out.push_back(serialize(p.query));
  return out;
}

}  // namespace folnar::narsese
