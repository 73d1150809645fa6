#pragma once

// Narsese intermediate representation. The compiler emits exactly four
// statement forms: inheritance, negated inheritance, conjunction of
// literals, and a non-nested implication. Factory functions enforce those
// shape invariants so a constructed tree always serializes to valid text.

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace folnar::narsese {

class Term {
 public:
  enum class Kind { Individual, Variable, Predicate, Product };
  using Ptr = std::shared_ptr<const Term>;

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  int index() const { return index_; }
  const Ptr& left() const { return left_; }
  const Ptr& right() const { return right_; }

  static Ptr individual(std::string name) {
    auto t = std::make_shared<Term>(Private{});
    t->kind_ = Kind::Individual;
    t->name_ = std::move(name);
    return t;
  }

  static Ptr variable(int index) {
    if (index < 1) throw std::invalid_argument("variable index must be >= 1");
    auto t = std::make_shared<Term>(Private{});
    t->kind_ = Kind::Variable;
    t->index_ = index;
    return t;
  }

  static Ptr predicate(std::string name) {
    auto t = std::make_shared<Term>(Private{});
    t->kind_ = Kind::Predicate;
    t->name_ = std::move(name);
    return t;
  }

  static Ptr product(Ptr l, Ptr r) {
    auto t = std::make_shared<Term>(Private{});
    t->kind_ = Kind::Product;
    t->left_ = std::move(l);
    t->right_ = std::move(r);
    return t;
  }

  struct Private {};
  explicit Term(Private) {}

 private:
  Kind kind_ = Kind::Predicate;
  std::string name_;
  int index_ = 0;
  Ptr left_;
  Ptr right_;
};

inline bool operator==(const Term& a, const Term& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Individual:
    case Term::Kind::Predicate:
      return a.name() == b.name();
    case Term::Kind::Variable:
      return a.index() == b.index();
    case Term::Kind::Product:
      return *a.left() == *b.left() && *a.right() == *b.right();
  }
  return false;
}

inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }

class Statement {
 public:
  enum class Kind { Inheritance, Negation, Conjunction, Implication };
  using Ptr = std::shared_ptr<const Statement>;

  Kind kind() const { return kind_; }
  const Term::Ptr& subject() const { return subject_; }
  const Term::Ptr& attribute() const { return attribute_; }
  const Ptr& inner() const { return inner_; }
  const std::vector<Ptr>& parts() const { return parts_; }
  const Ptr& antecedent() const { return antecedent_; }
  const Ptr& consequent() const { return consequent_; }

  bool is_literal() const {
    return kind_ == Kind::Inheritance ||
           (kind_ == Kind::Negation && inner_->kind_ == Kind::Inheritance);
  }

  static Ptr inheritance(Term::Ptr subject, Term::Ptr attribute) {
    auto s = std::make_shared<Statement>(Private{});
    s->kind_ = Kind::Inheritance;
    s->subject_ = std::move(subject);
    s->attribute_ = std::move(attribute);
    return s;
  }

  static Ptr negation(Ptr inner) {
    if (inner->kind_ != Kind::Inheritance) {
      throw std::invalid_argument("negation wraps an inheritance only");
    }
    auto s = std::make_shared<Statement>(Private{});
    s->kind_ = Kind::Negation;
    s->inner_ = std::move(inner);
    return s;
  }

  static Ptr conjunction(std::vector<Ptr> parts) {
    if (parts.size() < 2) {
      throw std::invalid_argument("conjunction needs at least two parts");
    }
    for (const auto& p : parts) {
      if (!p->is_literal()) {
        throw std::invalid_argument("conjunction parts must be literals");
      }
    }
    auto s = std::make_shared<Statement>(Private{});
    s->kind_ = Kind::Conjunction;
    s->parts_ = std::move(parts);
    return s;
  }

  static Ptr implication(Ptr antecedent, Ptr consequent) {
    if (!antecedent->is_literal() && antecedent->kind_ != Kind::Conjunction) {
      throw std::invalid_argument(
          "implication antecedent must be a literal or a conjunction");
    }
    if (!consequent->is_literal()) {
      throw std::invalid_argument("implication consequent must be a literal");
    }
    auto s = std::make_shared<Statement>(Private{});
    s->kind_ = Kind::Implication;
    s->antecedent_ = std::move(antecedent);
    s->consequent_ = std::move(consequent);
    return s;
  }

  struct Private {};
  explicit Statement(Private) {}

 private:
  Kind kind_ = Kind::Inheritance;
  Term::Ptr subject_;
  Term::Ptr attribute_;
  Ptr inner_;
  std::vector<Ptr> parts_;
  Ptr antecedent_;
  Ptr consequent_;
};

inline bool operator==(const Statement& a, const Statement& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Statement::Kind::Inheritance:
      return *a.subject() == *b.subject() && *a.attribute() == *b.attribute();
    case Statement::Kind::Negation:
      return *a.inner() == *b.inner();
    case Statement::Kind::Conjunction: {
      if (a.parts().size() != b.parts().size()) return false;
      for (std::size_t i = 0; i < a.parts().size(); ++i) {
        if (!(*a.parts()[i] == *b.parts()[i])) return false;
      }
      return true;
    }
    case Statement::Kind::Implication:
      return *a.antecedent() == *b.antecedent() &&
             *a.consequent() == *b.consequent();
  }
  return false;
}

inline bool operator!=(const Statement& a, const Statement& b) { return !(a == b); }

enum class Punctuation { Judgment, Question };

struct Sentence {
  Statement::Ptr statement;
  Punctuation punctuation = Punctuation::Judgment;

  friend bool operator==(const Sentence& a, const Sentence& b) {
    return a.punctuation == b.punctuation && *a.statement == *b.statement;
  }
};

inline Sentence judgment(Statement::Ptr s) {
  return {std::move(s), Punctuation::Judgment};
}

inline Sentence question(Statement::Ptr s) {
  return {std::move(s), Punctuation::Question};
}

struct Program {
  std::vector<Sentence> judgments;
  Sentence query;
};

}  // namespace folnar::narsese
