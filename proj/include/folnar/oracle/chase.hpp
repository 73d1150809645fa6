#pragma once

// Forward-chaining reading of a compiled program. Variable judgments are
// instantiated over the domain, rules fire only on literals that are
// already derived (no contraposition, no case splits), and derivation runs
// to a fixed point. Query labels:
//   literal       derived -> True, opposite derived -> False, else Uncertain;
//                 variable queries are existential over the domain
//   conjunction   an instantiation with every part derived -> True, else one
//                 with some part contradicted -> False, else Uncertain
//   implication   True only when the exact statement was asserted
// Deriving both signs of one atom raises ContradictoryDerivation.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "folnar/label.hpp"
#include "folnar/narsese/ast.hpp"
#include "folnar/narsese/serialize.hpp"
#include "folnar/oracle/errors.hpp"
#include "folnar/oracle/ground.hpp"

namespace folnar::oracle {

struct ChaseResult {
  Label label = Label::Uncertain;
  std::set<SignedLiteral> derived;
};

namespace detail {

struct PatArg {
  bool is_var = false;
  std::string constant;
  int var = 0;
};

struct PatAtom {
  std::string predicate;
  std::vector<PatArg> args;
};

struct PatLiteral {
  PatAtom atom;
  bool positive = true;
};

struct ChaseRule {
  std::vector<PatLiteral> antecedents;
  PatLiteral consequent;
};

inline PatArg pat_arg(const narsese::Term& t) {
  using K = narsese::Term::Kind;
  switch (t.kind()) {
    case K::Individual:
      return {false, t.name(), 0};
    case K::Predicate:
      return {false, t.name(), 0};
    case K::Variable:
      return {true, {}, t.index()};
    case K::Product:
      break;
  }
  throw std::invalid_argument("products do not nest inside term arguments");
}

inline PatAtom pat_atom(const narsese::Statement& inh) {
  PatAtom out;
  out.predicate = inh.attribute()->name();
  const narsese::Term& subject = *inh.subject();
  if (subject.kind() == narsese::Term::Kind::Product) {
    out.args.push_back(pat_arg(*subject.left()));
    out.args.push_back(pat_arg(*subject.right()));
  } else {
    out.args.push_back(pat_arg(subject));
  }
  return out;
}

inline PatLiteral pat_literal(const narsese::Statement& s) {
  if (s.kind() == narsese::Statement::Kind::Negation) {
    return {pat_atom(*s.inner()), false};
  }
  return {pat_atom(s), true};
}

inline void collect_vars(const PatLiteral& lit, std::vector<int>& out) {
  for (const auto& a : lit.atom.args) {
    if (a.is_var && std::find(out.begin(), out.end(), a.var) == out.end()) {
      out.push_back(a.var);
    }
  }
}

inline void collect_individuals(const narsese::Term& t,
                                std::vector<std::string>& out) {
  using K = narsese::Term::Kind;
  if (t.kind() == K::Individual) out.push_back(t.name());
  if (t.kind() == K::Product) {
    collect_individuals(*t.left(), out);
    collect_individuals(*t.right(), out);
  }
}

inline void collect_individuals(const narsese::Statement& s,
                                std::vector<std::string>& out) {
  using K = narsese::Statement::Kind;
  switch (s.kind()) {
    case K::Inheritance:
      collect_individuals(*s.subject(), out);
      return;
    case K::Negation:
      collect_individuals(*s.inner(), out);
      return;
    case K::Conjunction:
      for (const auto& p : s.parts()) collect_individuals(*p, out);
      return;
    case K::Implication:
      collect_individuals(*s.antecedent(), out);
      collect_individuals(*s.consequent(), out);
      return;
  }
}

inline SignedLiteral instantiate(const PatLiteral& lit,
                                 const std::map<int, std::string>& binding) {
  SignedLiteral out;
  out.positive = lit.positive;
  out.atom.predicate = lit.atom.predicate;
  for (const auto& a : lit.atom.args) {
    out.atom.args.push_back(a.is_var ? binding.at(a.var) : a.constant);
  }
  return out;
}

// Runs fn over every assignment of `vars` to domain constants. With no
// variables that is the single empty assignment; with an empty domain and
// variables present there are no assignments.
template <typename Fn>
inline void for_each_binding(const std::vector<int>& vars,
                             const std::vector<std::string>& domain, Fn fn) {
  std::map<int, std::string> binding;
  if (vars.empty()) {
    fn(binding);
    return;
  }
  if (domain.empty()) return;
  std::vector<std::size_t> odometer(vars.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      binding[vars[i]] = domain[odometer[i]];
    }
    fn(binding);
    std::size_t pos = 0;
    while (pos < vars.size() && ++odometer[pos] == domain.size()) {
      odometer[pos] = 0;
      ++pos;
    }
    if (pos == vars.size()) break;
  }
}

class FactSet {
 public:
  bool insert(const SignedLiteral& lit) {
    SignedLiteral opposite = lit;
    opposite.positive = !lit.positive;
    if (facts_.count(opposite)) {
      throw ContradictoryDerivation(oracle::to_string(lit.atom));
    }
    return facts_.insert(lit).second;
  }

  bool contains(const SignedLiteral& lit) const { return facts_.count(lit) > 0; }

  const std::set<SignedLiteral>& all() const { return facts_; }

 private:
  std::set<SignedLiteral> facts_;
};

}  // namespace detail

inline ChaseResult chase_detailed(const narsese::Program& program,
                                  const std::vector<std::string>& domain) {
  using SK = narsese::Statement::Kind;

  std::vector<std::string> consts = domain;
  for (const auto& j : program.judgments) {
    detail::collect_individuals(*j.statement, consts);
  }
  if (program.query.statement) {
    detail::collect_individuals(*program.query.statement, consts);
  }
  std::sort(consts.begin(), consts.end());
  consts.erase(std::unique(consts.begin(), consts.end()), consts.end());

  std::vector<detail::PatLiteral> fact_patterns;
  std::vector<detail::ChaseRule> rules;
  std::vector<std::string> asserted_statements;
  for (const auto& j : program.judgments) {
    asserted_statements.push_back(narsese::serialize(*j.statement));
    const narsese::Statement& s = *j.statement;
    if (s.kind() == SK::Implication) {
      detail::ChaseRule rule;
      const narsese::Statement& ant = *s.antecedent();
      if (ant.kind() == SK::Conjunction) {
        for (const auto& part : ant.parts()) {
          rule.antecedents.push_back(detail::pat_literal(*part));
        }
      } else {
        rule.antecedents.push_back(detail::pat_literal(ant));
      }
      rule.consequent = detail::pat_literal(*s.consequent());
      rules.push_back(std::move(rule));
    } else if (s.kind() == SK::Conjunction) {
      for (const auto& part : s.parts()) {
        fact_patterns.push_back(detail::pat_literal(*part));
      }
    } else {
      fact_patterns.push_back(detail::pat_literal(s));
    }
  }

  detail::FactSet facts;
  for (const auto& pattern : fact_patterns) {
    std::vector<int> vars;
    detail::collect_vars(pattern, vars);
    detail::for_each_binding(vars, consts, [&](const auto& binding) {
      facts.insert(detail::instantiate(pattern, binding));
    });
  }

  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& rule : rules) {
      std::vector<int> vars;
      for (const auto& a : rule.antecedents) detail::collect_vars(a, vars);
      detail::collect_vars(rule.consequent, vars);
      detail::for_each_binding(vars, consts, [&](const auto& binding) {
        for (const auto& a : rule.antecedents) {
          if (!facts.contains(detail::instantiate(a, binding))) return;
        }
        if (facts.insert(detail::instantiate(rule.consequent, binding))) {
          changed = true;
        }
      });
    }
  }

  ChaseResult result;
  result.derived = facts.all();

  const narsese::Statement& q = *program.query.statement;
  auto label_parts = [&](const std::vector<detail::PatLiteral>& parts) {
    std::vector<int> vars;
    for (const auto& p : parts) detail::collect_vars(p, vars);
    bool any_true = false;
    bool any_false = false;
    detail::for_each_binding(vars, consts, [&](const auto& binding) {
      bool all = true;
      bool refuted = false;
      for (const auto& p : parts) {
        SignedLiteral lit = detail::instantiate(p, binding);
        if (!facts.contains(lit)) all = false;
        lit.positive = !lit.positive;
        if (facts.contains(lit)) refuted = true;
      }
      if (all) any_true = true;
      if (refuted) any_false = true;
    });
    if (any_true) return Label::True;
    if (any_false) return Label::False;
    return Label::Uncertain;
  };

  if (q.kind() == SK::Implication) {
    std::string wanted = narsese::serialize(q);
    result.label = Label::Uncertain;
    for (const auto& s : asserted_statements) {
      if (s == wanted) {
        result.label = Label::True;
        break;
      }
    }
  } else if (q.kind() == SK::Conjunction) {
    std::vector<detail::PatLiteral> parts;
    for (const auto& p : q.parts()) parts.push_back(detail::pat_literal(*p));
    result.label = label_parts(parts);
  } else {
    result.label = label_parts({detail::pat_literal(q)});
  }
  return result;
}

inline Label chase_compiled(const narsese::Program& program,
                            const std::vector<std::string>& domain) {
  return chase_detailed(program, domain).label;
}

}  // namespace folnar::oracle
