#pragma once

// Recursive-descent parser for the FOL fragment.
//
// Precedence, tightest first: ~  &  |  xor  ->
// -> is right-associative; & | xor are left-associative. A quantifier
// binds the longest formula that follows it, and its variable must occur
// in the body. An identifier is a Variable iff an enclosing forall binds
// that name; every other identifier in argument position is a Constant.

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "folnar/fol/ast.hpp"
#include "folnar/fol/errors.hpp"
#include "folnar/fol/lexer.hpp"
#include "folnar/fol/normalize.hpp"

namespace folnar::fol {

namespace detail {

inline bool mentions_variable(const Formula& f, const std::string& name) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      for (const auto& t : f.args()) {
        if (t.kind == Term::Kind::Variable && t.name == name) return true;
      }
      return false;
    case Formula::Kind::Not:
      return mentions_variable(*f.operand(), name);
    case Formula::Kind::ForAll:
      return mentions_variable(*f.body(), name);
    default:
      return mentions_variable(*f.lhs(), name) || mentions_variable(*f.rhs(), name);
  }
}

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, std::string_view source)
      : tokens_(tokens), source_(source) {}

  FormulaPtr run() {
    if (tokens_.empty()) throw ParseError(0, "a formula", "end of input");
    FormulaPtr f = parse_formula();
    if (pos_ < tokens_.size()) {
      throw ParseError(tokens_[pos_].offset, "end of input",
                       "'" + tokens_[pos_].text + "'");
    }
    return f;
  }

 private:
  bool at_end() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }
  bool check(TokenKind k) const { return !at_end() && peek().kind == k; }
  Token advance() { return tokens_[pos_++]; }

  Token expect(TokenKind k, const std::string& what) {
    if (!check(k)) {
      throw ParseError(error_offset(), what,
                       at_end() ? "end of input" : "'" + peek().text + "'");
    }
    return advance();
  }

  std::size_t error_offset() const {
    if (!at_end()) return peek().offset;
    return source_.size();
  }

  SourceSpan span_from(std::size_t begin_tok) const {
    const Token& first = tokens_[begin_tok];
    const Token& last = tokens_[pos_ - 1];
    std::size_t b = first.offset;
    std::size_t e = last.offset + last.text.size();
    return {b, e, std::string(source_.substr(b, e - b))};
  }

  FormulaPtr parse_formula() { return parse_implies(); }

  FormulaPtr parse_implies() {
    std::size_t start = pos_;
    FormulaPtr lhs = parse_xor();
    if (check(TokenKind::Implies)) {
      advance();
      FormulaPtr rhs = parse_implies();
      return Formula::implication(std::move(lhs), std::move(rhs), span_from(start));
    }
    return lhs;
  }

  FormulaPtr parse_xor() {
    std::size_t start = pos_;
    FormulaPtr lhs = parse_or();
    while (check(TokenKind::Xor)) {
      advance();
      FormulaPtr rhs = parse_or();
      lhs = Formula::exclusive_or(std::move(lhs), std::move(rhs), span_from(start));
    }
    return lhs;
  }

  FormulaPtr parse_or() {
    std::size_t start = pos_;
    FormulaPtr lhs = parse_and();
    while (check(TokenKind::Or)) {
      advance();
      FormulaPtr rhs = parse_and();
      lhs = Formula::disjunction(std::move(lhs), std::move(rhs), span_from(start));
    }
    return lhs;
  }

  FormulaPtr parse_and() {
    std::size_t start = pos_;
    FormulaPtr lhs = parse_unary();
    while (check(TokenKind::And)) {
      advance();
      FormulaPtr rhs = parse_unary();
      lhs = Formula::conjunction(std::move(lhs), std::move(rhs), span_from(start));
    }
    return lhs;
  }

  FormulaPtr parse_unary() {
    std::size_t start = pos_;
    if (check(TokenKind::Not)) {
      advance();
      FormulaPtr inner = parse_unary();
      return Formula::negation(std::move(inner), span_from(start));
    }
    if (check(TokenKind::ForAll)) {
      advance();
      Token var = expect(TokenKind::Ident, "a variable name");
      scope_.push_back(var.text);
      FormulaPtr body = parse_formula();
      scope_.pop_back();
      if (!mentions_variable(*body, var.text)) {
        throw ParseError(var.offset, "an occurrence of quantified variable '" +
                                         var.text + "' in its body",
                         "none");
      }
      return Formula::universal(var.text, std::move(body), span_from(start));
    }
    return parse_primary();
  }

  FormulaPtr parse_primary() {
    std::size_t start = pos_;
    if (check(TokenKind::LParen)) {
      advance();
      FormulaPtr inner = parse_formula();
      expect(TokenKind::RParen, "')'");
      return inner;
    }
    if (check(TokenKind::Ident)) {
      Token pred = advance();
      expect(TokenKind::LParen, "'(' after predicate '" + pred.text + "'");
      std::vector<Term> args;
      args.push_back(parse_term());
      while (check(TokenKind::Comma)) {
        advance();
        args.push_back(parse_term());
      }
      expect(TokenKind::RParen, "')'");
      if (args.size() > 2) {
        throw ParseError(pred.offset, "an atom of arity 1 or 2",
                         "arity " + std::to_string(args.size()));
      }
      return Formula::atom(pred.text, std::move(args), span_from(start));
    }
    throw ParseError(error_offset(), "a formula",
                     at_end() ? "end of input" : "'" + peek().text + "'");
  }

  Term parse_term() {
    Token t = expect(TokenKind::Ident, "a term");
    bool bound = std::find(scope_.rbegin(), scope_.rend(), t.text) != scope_.rend();
    return bound ? Term::variable(t.text) : Term::constant(t.text);
  }

  const std::vector<Token>& tokens_;
  std::string_view source_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

}  // namespace detail

// Parses normalized text. Throws LexError, ParseError, UnsupportedQuantifier.
inline FormulaPtr parse(std::string_view normalized) {
  std::vector<Token> tokens = tokenize(normalized);
  return detail::Parser(tokens, normalized).run();
}

// Convenience for raw dataset text: normalize, then parse.
inline FormulaPtr parse_fol(std::string_view raw) {
  std::string cleaned = normalize(raw);
  return parse(cleaned);
}

}  // namespace folnar::fol
