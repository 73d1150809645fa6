#pragma once

// Cross-check between the two oracles. Forward chaining is complete for
// the positive-definite fragment, so a disagreement there means a bug; on
// units whose compilation strengthened a disjunctive consequent or
// expanded an exclusive-or, divergence is expected and classified as
// StrengthenedDivergence. Any other mismatch (including a chase-side
// sign clash) is reported as Contradiction.

#include <optional>
#include <string>
#include <vector>

#include "folnar/compiler/compile.hpp"
#include "folnar/label.hpp"
#include "folnar/oracle/chase.hpp"
#include "folnar/oracle/errors.hpp"
#include "folnar/oracle/models.hpp"

namespace folnar::oracle {

enum class Agreement { Agree, StrengthenedDivergence, Contradiction };

inline std::string to_string(Agreement a) {
  switch (a) {
    case Agreement::Agree: return "agree";
    case Agreement::StrengthenedDivergence: return "strengthened_divergence";
    case Agreement::Contradiction: return "contradiction";
  }
  return "contradiction";
}

struct AgreementResult {
  Agreement verdict = Agreement::Agree;
  Label models_label = Label::Uncertain;
  std::optional<Label> chase_label;
  std::string note;
};

namespace detail {

inline bool implies_with_or_consequent(const fol::Formula& f) {
  using K = fol::Formula::Kind;
  if (f.kind() == K::Implies &&
      compiler::detail::contains_kind(*f.rhs(), K::Or)) {
    return true;
  }
  switch (f.kind()) {
    case K::Atom:
      return false;
    case K::Not:
      return implies_with_or_consequent(*f.operand());
    case K::ForAll:
      return implies_with_or_consequent(*f.body());
    default:
      return implies_with_or_consequent(*f.lhs()) ||
             implies_with_or_consequent(*f.rhs());
  }
}

}  // namespace detail

// True when compiling this unit applies a strengthening conversion: a
// disjunctive consequent or an exclusive-or premise.
inline bool has_strengthening_pattern(const compiler::CompileUnit& unit) {
  using K = fol::Formula::Kind;
  for (const auto& p : unit.premises) {
    if (compiler::detail::contains_kind(*p, K::Xor)) return true;
    if (detail::implies_with_or_consequent(*p)) return true;
  }
  return false;
}

inline AgreementResult agreement_check(const compiler::CompileUnit& unit) {
  AgreementResult result;
  result.models_label = entail_models(unit);

  bool strengthened = has_strengthening_pattern(unit);
  auto mismatch = strengthened ? Agreement::StrengthenedDivergence
                               : Agreement::Contradiction;

  compiler::CompileReport report = compiler::compile_unit(unit);
  try {
    result.chase_label = chase_compiled(report.program, unit_constants(unit));
  } catch (const ContradictoryDerivation& e) {
    result.verdict = mismatch;
    result.note = e.what();
    return result;
  }

  if (*result.chase_label == result.models_label) {
    result.verdict = Agreement::Agree;
  } else {
    result.verdict = mismatch;
    result.note = "labels differ: models=" + to_string(result.models_label) +
                  " chase=" + to_string(*result.chase_label);
  }
  return result;
}

}  // namespace folnar::oracle
