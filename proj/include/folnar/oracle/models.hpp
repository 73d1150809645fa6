#pragma once

// Classical entailment by exhaustive model enumeration. Universals ground
// over the constants occurring in the unit (plus any caller-supplied
// extras); an empty domain makes them vacuously true. The conclusion is
// True when it holds in every premise model, False when it fails in every
// premise model, Uncertain otherwise.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "folnar/compiler/compile.hpp"
#include "folnar/fol/ast.hpp"
#include "folnar/fol/errors.hpp"
#include "folnar/label.hpp"
#include "folnar/oracle/errors.hpp"
#include "folnar/oracle/ground.hpp"

namespace folnar::oracle {

inline constexpr std::size_t kMaxGroundAtoms = 24;

namespace detail {

inline void collect_constants(const fol::Formula& f, std::vector<std::string>& out) {
  using K = fol::Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
      for (const auto& t : f.args()) {
        if (t.kind == fol::Term::Kind::Constant) out.push_back(t.name);
      }
      return;
    case K::Not:
      collect_constants(*f.operand(), out);
      return;
    case K::ForAll:
      collect_constants(*f.body(), out);
      return;
    default:
      collect_constants(*f.lhs(), out);
      collect_constants(*f.rhs(), out);
      return;
  }
}

struct GExpr {
  enum class Op { Atom, Not, And, Or, Implies, Xor };
  Op op = Op::Atom;
  int atom = -1;
  std::vector<GExpr> kids;
};

class Grounder {
 public:
  explicit Grounder(std::vector<std::string> domain) : domain_(std::move(domain)) {}

  GExpr ground(const fol::Formula& f) {
    using K = fol::Formula::Kind;
    switch (f.kind()) {
      case K::Atom: {
        GroundAtom atom{f.predicate(), {}};
        for (const auto& t : f.args()) {
          if (t.kind == fol::Term::Kind::Constant) {
            atom.args.push_back(t.name);
          } else {
            auto it = binding_.find(t.name);
            if (it == binding_.end()) throw fol::UnboundVariable(t.name);
            atom.args.push_back(it->second);
          }
        }
        GExpr e;
        e.op = GExpr::Op::Atom;
        e.atom = intern(atom);
        return e;
      }
      case K::Not: {
        GExpr e;
        e.op = GExpr::Op::Not;
        e.kids.push_back(ground(*f.operand()));
        return e;
      }
      case K::ForAll: {
        // Conjunction over the domain; zero kids evaluate to true.
        GExpr e;
        e.op = GExpr::Op::And;
        auto saved = binding_.find(f.var()) != binding_.end()
                         ? std::optional<std::string>(binding_[f.var()])
                         : std::nullopt;
        for (const auto& c : domain_) {
          binding_[f.var()] = c;
          e.kids.push_back(ground(*f.body()));
        }
        if (saved) {
          binding_[f.var()] = *saved;
        } else {
          binding_.erase(f.var());
        }
        return e;
      }
      default: {
        GExpr e;
        switch (f.kind()) {
          case K::And: e.op = GExpr::Op::And; break;
          case K::Or: e.op = GExpr::Op::Or; break;
          case K::Implies: e.op = GExpr::Op::Implies; break;
          default: e.op = GExpr::Op::Xor; break;
        }
        e.kids.push_back(ground(*f.lhs()));
        e.kids.push_back(ground(*f.rhs()));
        return e;
      }
    }
  }

  std::size_t atom_count() const { return atoms_.size(); }

 private:
  int intern(const GroundAtom& a) {
    auto it = index_.find(a);
    if (it != index_.end()) return it->second;
    int idx = static_cast<int>(atoms_.size());
    atoms_.push_back(a);
    index_.emplace(a, idx);
    return idx;
  }

  std::vector<std::string> domain_;
  std::map<std::string, std::string> binding_;
  std::vector<GroundAtom> atoms_;
  std::map<GroundAtom, int> index_;
};

inline bool eval(const GExpr& e, std::uint32_t mask) {
  switch (e.op) {
    case GExpr::Op::Atom:
      return (mask >> e.atom) & 1u;
    case GExpr::Op::Not:
      return !eval(e.kids[0], mask);
    case GExpr::Op::And:
      for (const auto& k : e.kids) {
        if (!eval(k, mask)) return false;
      }
      return true;
    case GExpr::Op::Or:
      for (const auto& k : e.kids) {
        if (eval(k, mask)) return true;
      }
      return false;
    case GExpr::Op::Implies:
      return !eval(e.kids[0], mask) || eval(e.kids[1], mask);
    case GExpr::Op::Xor:
      return eval(e.kids[0], mask) != eval(e.kids[1], mask);
  }
  return false;
}

}  // namespace detail

// Constants mentioned anywhere in the unit, sorted and deduplicated.
inline std::vector<std::string> unit_constants(const compiler::CompileUnit& unit) {
  std::vector<std::string> out;
  for (const auto& p : unit.premises) detail::collect_constants(*p, out);
  if (unit.conclusion) detail::collect_constants(*unit.conclusion, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Label entail_models(const compiler::CompileUnit& unit,
                           const std::vector<std::string>& extra_domain = {}) {
  std::vector<std::string> domain = unit_constants(unit);
  domain.insert(domain.end(), extra_domain.begin(), extra_domain.end());
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());

  detail::Grounder grounder(domain);
  std::vector<detail::GExpr> premises;
  premises.reserve(unit.premises.size());
  for (const auto& p : unit.premises) premises.push_back(grounder.ground(*p));
  detail::GExpr conclusion = grounder.ground(*unit.conclusion);

  std::size_t n = grounder.atom_count();
  if (n > kMaxGroundAtoms) throw DomainTooLarge(n, kMaxGroundAtoms);

  bool any_model = false;
  bool always_true = true;
  bool always_false = true;
  std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    bool sat = true;
    for (const auto& p : premises) {
      if (!detail::eval(p, static_cast<std::uint32_t>(mask))) {
        sat = false;
        break;
      }
    }
    if (!sat) continue;
    any_model = true;
    bool c = detail::eval(conclusion, static_cast<std::uint32_t>(mask));
    always_true = always_true && c;
    always_false = always_false && !c;
    if (!always_true && !always_false) return Label::Uncertain;
  }
  if (!any_model) throw ContradictoryPremises();
  if (always_true) return Label::True;
  if (always_false) return Label::False;
  return Label::Uncertain;
}

}  // namespace folnar::oracle
