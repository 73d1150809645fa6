#pragma once

// Deterministic FOL -> Narsese conversion.
//
// Premise patterns, after stripping the leading quantifier prefix:
//   literal                    one judgment
//   conjunction of facts       one judgment per conjunct, source order
//   phi -> psi                 rules; composite antecedents split by
//                              disjunct, composite consequents split into
//                              one rule per literal leaf (a disjunctive
//                              consequent is strengthened to conjunction),
//                              exclusive-or antecedents add the mutual
//                              exclusion pair before their consequence rules
//
// Everything else is UnsupportedPattern. Variable indices are assigned per
// emitted statement in first-appearance order, antecedent before
// consequent, so equal inputs always produce identical bytes.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "folnar/compiler/errors.hpp"
#include "folnar/fol/ast.hpp"
#include "folnar/fol/errors.hpp"
#include "folnar/fol/print.hpp"
#include "folnar/narsese/ast.hpp"

namespace folnar::compiler {

struct CompileUnit {
  std::vector<fol::FormulaPtr> premises;
  fol::FormulaPtr conclusion;
};

struct CompileReport {
  narsese::Program program;
  bool fallback_used = false;
  std::optional<std::string> fallback_subformula;
  // source_map[i] lists the emitted judgment line indices of premise i.
  std::vector<std::vector<std::size_t>> source_map;
};

struct QueryCompilation {
  narsese::Sentence question;
  bool fallback_used = false;
  std::optional<std::string> fallback_subformula;
};

// Names bound by the stripped quantifier prefix of the current premise.
using BoundVars = std::vector<std::string>;

// Per-statement variable indices, assigned at first appearance.
class VariableNumbering {
 public:
  int index_for(const std::string& name) {
    for (const auto& [n, i] : assigned_) {
      if (n == name) return i;
    }
    int idx = static_cast<int>(assigned_.size()) + 1;
    assigned_.emplace_back(name, idx);
    return idx;
  }

 private:
  std::vector<std::pair<std::string, int>> assigned_;
};

namespace detail {

inline bool is_bound(const BoundVars& bound, const std::string& name) {
  for (const auto& b : bound) {
    if (b == name) return true;
  }
  return false;
}

inline bool is_literal(const fol::Formula& f) {
  using K = fol::Formula::Kind;
  return f.kind() == K::Atom ||
         (f.kind() == K::Not && f.operand()->kind() == K::Atom);
}

inline bool contains_kind(const fol::Formula& f, fol::Formula::Kind k) {
  using K = fol::Formula::Kind;
  if (f.kind() == k) return true;
  switch (f.kind()) {
    case K::Atom:
      return false;
    case K::Not:
      return contains_kind(*f.operand(), k);
    case K::ForAll:
      return contains_kind(*f.body(), k);
    default:
      return contains_kind(*f.lhs(), k) || contains_kind(*f.rhs(), k);
  }
}

inline void flatten(const fol::FormulaPtr& f, fol::Formula::Kind k,
                    std::vector<fol::FormulaPtr>& out) {
  if (f->kind() == k) {
    flatten(f->lhs(), k, out);
    flatten(f->rhs(), k, out);
  } else {
    out.push_back(f);
  }
}

inline std::vector<fol::FormulaPtr> flattened(const fol::FormulaPtr& f,
                                              fol::Formula::Kind k) {
  std::vector<fol::FormulaPtr> out;
  flatten(f, k, out);
  return out;
}

// Flips a literal at the formula level; double negation collapses.
inline fol::FormulaPtr negate_literal(const fol::FormulaPtr& f) {
  if (f->kind() == fol::Formula::Kind::Not) return f->operand();
  return fol::Formula::negation(f);
}

}  // namespace detail

inline narsese::Statement::Ptr compile_atom(const fol::Formula& atom,
                                            const BoundVars& bound,
                                            VariableNumbering& numbering) {
  if (atom.kind() != fol::Formula::Kind::Atom) {
    throw std::invalid_argument("compile_atom needs an Atom node");
  }
  if (atom.args().empty() || atom.args().size() > 2) {
    throw UnsupportedArity(atom.predicate(), atom.args().size());
  }
  auto make_term = [&](const fol::Term& t) -> narsese::Term::Ptr {
    if (t.kind == fol::Term::Kind::Variable) {
      if (!detail::is_bound(bound, t.name)) throw fol::UnboundVariable(t.name);
      return narsese::Term::variable(numbering.index_for(t.name));
    }
    return narsese::Term::individual(t.name);
  };
  narsese::Term::Ptr subject = make_term(atom.args()[0]);
  if (atom.args().size() == 2) {
    subject = narsese::Term::product(std::move(subject), make_term(atom.args()[1]));
  }
  return narsese::Statement::inheritance(std::move(subject),
                                         narsese::Term::predicate(atom.predicate()));
}

namespace detail {

inline narsese::Statement::Ptr compile_literal(const fol::Formula& f,
                                               const BoundVars& bound,
                                               VariableNumbering& numbering) {
  if (f.kind() == fol::Formula::Kind::Not) {
    return narsese::Statement::negation(
        compile_atom(*f.operand(), bound, numbering));
  }
  return compile_atom(f, bound, numbering);
}

inline UnsupportedPattern unsupported(const std::string& reason,
                                      const fol::Formula& node) {
  return UnsupportedPattern(reason, fol::to_canonical(node));
}

// One rule statement: conjunction (or single literal) antecedent, literal
// consequent, fresh numbering.
inline narsese::Sentence rule_sentence(const std::vector<fol::FormulaPtr>& antecedents,
                                       const fol::FormulaPtr& consequent,
                                       const BoundVars& bound) {
  VariableNumbering numbering;
  narsese::Statement::Ptr left;
  if (antecedents.size() == 1) {
    left = compile_literal(*antecedents[0], bound, numbering);
  } else {
    std::vector<narsese::Statement::Ptr> parts;
    parts.reserve(antecedents.size());
    for (const auto& a : antecedents) {
      parts.push_back(compile_literal(*a, bound, numbering));
    }
    left = narsese::Statement::conjunction(std::move(parts));
  }
  auto right = compile_literal(*consequent, bound, numbering);
  return narsese::judgment(
      narsese::Statement::implication(std::move(left), std::move(right)));
}

// Literal leaves of a composite consequent, left to right. And and Or both
// split; Or is the strengthening case.
inline void consequent_leaves(const fol::FormulaPtr& f,
                              std::vector<fol::FormulaPtr>& out) {
  using K = fol::Formula::Kind;
  if (f->kind() == K::And || f->kind() == K::Or) {
    consequent_leaves(f->lhs(), out);
    consequent_leaves(f->rhs(), out);
    return;
  }
  if (is_literal(*f)) {
    out.push_back(f);
    return;
  }
  throw unsupported("consequent does not split into literals", *f);
}

inline void compile_rule(const fol::FormulaPtr& ant, const fol::FormulaPtr& cons,
                         const BoundVars& bound,
                         std::vector<narsese::Sentence>& out) {
  using K = fol::Formula::Kind;

  switch (ant->kind()) {
    case K::Or: {
      for (const auto& piece : flattened(ant, K::Or)) {
        compile_rule(piece, cons, bound, out);
      }
      return;
    }
    case K::Xor: {
      const auto& a = ant->lhs();
      const auto& b = ant->rhs();
      if (!is_literal(*a) || !is_literal(*b)) {
        throw unsupported("exclusive-or needs literal operands", *ant);
      }
      out.push_back(rule_sentence({a}, negate_literal(b), bound));
      out.push_back(rule_sentence({b}, negate_literal(a), bound));
      compile_rule(a, cons, bound, out);
      compile_rule(b, cons, bound, out);
      return;
    }
    case K::And: {
      auto conjuncts = flattened(ant, K::And);
      for (const auto& c : conjuncts) {
        if (!is_literal(*c)) {
          throw unsupported("antecedent conjuncts must be literals", *c);
        }
      }
      std::vector<fol::FormulaPtr> leaves;
      consequent_leaves(cons, leaves);
      for (const auto& leaf : leaves) {
        out.push_back(rule_sentence(conjuncts, leaf, bound));
      }
      return;
    }
    default: {
      if (!is_literal(*ant)) {
        throw unsupported("antecedent is outside the supported patterns", *ant);
      }
      std::vector<fol::FormulaPtr> leaves;
      consequent_leaves(cons, leaves);
      for (const auto& leaf : leaves) {
        out.push_back(rule_sentence({ant}, leaf, bound));
      }
      return;
    }
  }
}

inline void compile_premise_rec(fol::FormulaPtr f, BoundVars bound,
                                std::vector<narsese::Sentence>& out) {
  using K = fol::Formula::Kind;
  while (f->kind() == K::ForAll) {
    bound.push_back(f->var());
    f = f->body();
  }
  if (is_literal(*f)) {
    VariableNumbering numbering;
    out.push_back(narsese::judgment(compile_literal(*f, bound, numbering)));
    return;
  }
  switch (f->kind()) {
    case K::And: {
      if (contains_kind(*f, K::Implies)) {
        throw unsupported("a conjunction cannot mix facts with rules", *f);
      }
      for (const auto& conjunct : flattened(f, K::And)) {
        compile_premise_rec(conjunct, bound, out);
      }
      return;
    }
    case K::Implies: {
      const auto& ant = f->lhs();
      const auto& cons = f->rhs();
      if (contains_kind(*ant, K::ForAll) || contains_kind(*cons, K::ForAll)) {
        throw unsupported("quantifier nested inside a rule", *f);
      }
      if (contains_kind(*ant, K::Implies) || contains_kind(*cons, K::Implies)) {
        throw unsupported("nested implication", *f);
      }
      if (contains_kind(*cons, K::Xor)) {
        throw unsupported("exclusive-or in a consequent", *cons);
      }
      compile_rule(ant, cons, bound, out);
      return;
    }
    case K::Or:
      throw unsupported("a bare disjunction cannot be asserted", *f);
    case K::Xor:
      throw unsupported("a bare exclusive-or cannot be asserted", *f);
    case K::Not:
      throw unsupported("negation over a non-atomic formula", *f);
    default:
      throw unsupported("premise is outside the supported patterns", *f);
  }
}

}  // namespace detail

inline std::vector<narsese::Sentence> compile_premise(const fol::FormulaPtr& f) {
  std::vector<narsese::Sentence> out;
  detail::compile_premise_rec(f, {}, out);
  return out;
}

namespace detail {

// Single-statement reinterpretation of a composite conclusion: shapes that
// a premise would compile to exactly one judgment become one question.
inline narsese::Statement::Ptr try_single_statement(const fol::FormulaPtr& g,
                                                    const BoundVars& bound) {
  using K = fol::Formula::Kind;
  if (g->kind() == K::And) {
    auto conjuncts = flattened(g, K::And);
    for (const auto& c : conjuncts) {
      if (!is_literal(*c)) return nullptr;
    }
    VariableNumbering numbering;
    std::vector<narsese::Statement::Ptr> parts;
    parts.reserve(conjuncts.size());
    for (const auto& c : conjuncts) {
      parts.push_back(compile_literal(*c, bound, numbering));
    }
    return narsese::Statement::conjunction(std::move(parts));
  }
  if (g->kind() == K::Implies) {
    const auto& ant = g->lhs();
    const auto& cons = g->rhs();
    if (!is_literal(*cons)) return nullptr;
    std::vector<fol::FormulaPtr> conjuncts;
    if (ant->kind() == K::And) {
      conjuncts = flattened(ant, K::And);
    } else {
      conjuncts = {ant};
    }
    for (const auto& c : conjuncts) {
      if (!is_literal(*c)) return nullptr;
    }
    VariableNumbering numbering;
    narsese::Statement::Ptr left;
    if (conjuncts.size() == 1) {
      left = compile_literal(*conjuncts[0], bound, numbering);
    } else {
      std::vector<narsese::Statement::Ptr> parts;
      for (const auto& c : conjuncts) {
        parts.push_back(compile_literal(*c, bound, numbering));
      }
      left = narsese::Statement::conjunction(std::move(parts));
    }
    return narsese::Statement::implication(
        std::move(left), compile_literal(*cons, bound, numbering));
  }
  return nullptr;
}

struct FallbackPick {
  fol::FormulaPtr node;
  narsese::Statement::Ptr statement;
};

// Preorder search (node, then children) for the first literal subformula
// that compiles under the quantifiers crossed on the way down.
inline std::optional<FallbackPick> first_queryable(const fol::FormulaPtr& f,
                                                   BoundVars bound) {
  using K = fol::Formula::Kind;
  if (f->kind() == K::ForAll) {
    bound.push_back(f->var());
    return first_queryable(f->body(), std::move(bound));
  }
  if (is_literal(*f)) {
    try {
      VariableNumbering numbering;
      return FallbackPick{f, compile_literal(*f, bound, numbering)};
    } catch (const UnsupportedArity&) {
    } catch (const fol::UnboundVariable&) {
    }
    return std::nullopt;
  }
  if (f->kind() == K::Not) return first_queryable(f->operand(), std::move(bound));
  if (auto left = first_queryable(f->lhs(), bound)) return left;
  return first_queryable(f->rhs(), std::move(bound));
}

}  // namespace detail

inline QueryCompilation compile_query(const fol::FormulaPtr& conclusion) {
  using K = fol::Formula::Kind;
  BoundVars bound;
  fol::FormulaPtr g = conclusion;
  while (g->kind() == K::ForAll) {
    bound.push_back(g->var());
    g = g->body();
  }
  try {
    if (detail::is_literal(*g)) {
      VariableNumbering numbering;
      return {narsese::question(detail::compile_literal(*g, bound, numbering)),
              false, std::nullopt};
    }
    if (auto stmt = detail::try_single_statement(g, bound)) {
      return {narsese::question(std::move(stmt)), false, std::nullopt};
    }
  } catch (const UnsupportedArity&) {
  } catch (const fol::UnboundVariable&) {
  }
  auto pick = detail::first_queryable(conclusion, {});
  if (!pick) throw NoQueryableSubformula();
  return {narsese::question(pick->statement), true,
          fol::to_canonical(*pick->node)};
}

inline CompileReport compile_unit(const CompileUnit& unit) {
  CompileReport report;
  std::size_t next_line = 0;
  for (std::size_t i = 0; i < unit.premises.size(); ++i) {
    std::vector<narsese::Sentence> lines;
    try {
      lines = compile_premise(unit.premises[i]);
    } catch (const UnsupportedPattern& e) {
      throw UnsupportedPattern(e.reason(), e.node(), i);
    }
    std::vector<std::size_t> indices;
    indices.reserve(lines.size());
    for (auto& sentence : lines) {
      indices.push_back(next_line++);
      report.program.judgments.push_back(std::move(sentence));
    }
    report.source_map.push_back(std::move(indices));
  }
  QueryCompilation q = compile_query(unit.conclusion);
  report.program.query = std::move(q.question);
  report.fallback_used = q.fallback_used;
  report.fallback_subformula = std::move(q.fallback_subformula);
  return report;
}

}  // namespace folnar::compiler
