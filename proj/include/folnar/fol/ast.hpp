#pragma once

// Immutable first-order formula trees. Nodes are shared_ptr<const> so
// subtrees can be reused freely; structural equality ignores source spans.

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace folnar::fol {

// Byte range into the normalized source text. `text` keeps the covered
// slice so diagnostics survive after the source string is gone.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string text;
};

struct Term {
  enum class Kind { Constant, Variable };
  Kind kind = Kind::Constant;
  std::string name;

  static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
  static Term variable(std::string n) { return {Kind::Variable, std::move(n)}; }

  friend bool operator==(const Term& a, const Term& b) {
    return a.kind == b.kind && a.name == b.name;
  }
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
 public:
  enum class Kind { Atom, Not, And, Or, Implies, Xor, ForAll };

  Kind kind() const { return kind_; }
  const SourceSpan& span() const { return span_; }

  // Atom accessors.
  const std::string& predicate() const { return predicate_; }
  const std::vector<Term>& args() const { return args_; }

  // ForAll accessors.
  const std::string& var() const { return var_; }
  const FormulaPtr& body() const { return left_; }

  // Not accessor.
  const FormulaPtr& operand() const { return left_; }

  // Binary accessors.
  const FormulaPtr& lhs() const { return left_; }
  const FormulaPtr& rhs() const { return right_; }

  static FormulaPtr atom(std::string predicate, std::vector<Term> args,
                         SourceSpan span = {}) {
    auto f = std::make_shared<Formula>(Private{});
    f->kind_ = Kind::Atom;
    f->predicate_ = std::move(predicate);
    f->args_ = std::move(args);
    f->span_ = std::move(span);
    return f;
  }

  static FormulaPtr negation(FormulaPtr inner, SourceSpan span = {}) {
    return unary(Kind::Not, std::move(inner), std::move(span));
  }

  static FormulaPtr conjunction(FormulaPtr l, FormulaPtr r, SourceSpan span = {}) {
    return binary(Kind::And, std::move(l), std::move(r), std::move(span));
  }

  static FormulaPtr disjunction(FormulaPtr l, FormulaPtr r, SourceSpan span = {}) {
    return binary(Kind::Or, std::move(l), std::move(r), std::move(span));
  }

  static FormulaPtr implication(FormulaPtr l, FormulaPtr r, SourceSpan span = {}) {
    return binary(Kind::Implies, std::move(l), std::move(r), std::move(span));
  }

  static FormulaPtr exclusive_or(FormulaPtr l, FormulaPtr r, SourceSpan span = {}) {
    return binary(Kind::Xor, std::move(l), std::move(r), std::move(span));
  }

  static FormulaPtr universal(std::string var, FormulaPtr body, SourceSpan span = {}) {
    auto f = std::make_shared<Formula>(Private{});
    f->kind_ = Kind::ForAll;
    f->var_ = std::move(var);
    f->left_ = std::move(body);
    f->span_ = std::move(span);
    return f;
  }

  struct Private {};
  explicit Formula(Private) {}

 private:
  static FormulaPtr unary(Kind k, FormulaPtr inner, SourceSpan span) {
    auto f = std::make_shared<Formula>(Private{});
    f->kind_ = k;
    f->left_ = std::move(inner);
    f->span_ = std::move(span);
    return f;
  }

  static FormulaPtr binary(Kind k, FormulaPtr l, FormulaPtr r, SourceSpan span) {
    auto f = std::make_shared<Formula>(Private{});
    f->kind_ = k;
    f->left_ = std::move(l);
    f->right_ = std::move(r);
    f->span_ = std::move(span);
    return f;
  }

  Kind kind_ = Kind::Atom;
  std::string predicate_;
  std::vector<Term> args_;
  std::string var_;
  FormulaPtr left_;
  FormulaPtr right_;
  SourceSpan span_;
};

inline bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Atom:
      return a.predicate() == b.predicate() && a.args() == b.args();
    case Formula::Kind::Not:
      return structurally_equal(*a.operand(), *b.operand());
    case Formula::Kind::ForAll:
      return a.var() == b.var() && structurally_equal(*a.body(), *b.body());
    default:
      return structurally_equal(*a.lhs(), *b.lhs()) &&
             structurally_equal(*a.rhs(), *b.rhs());
  }
}

inline bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (!a || !b) return a == b;
  return structurally_equal(*a, *b);
}

}  // namespace folnar::fol
