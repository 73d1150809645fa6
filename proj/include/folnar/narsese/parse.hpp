#pragma once

// Inverse of serialize.hpp for the emitted grammar. Whitespace between
// tokens is flexible on input; nested && chains are flattened so parsing
// a serialized conjunction restores the flat parts vector.

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "folnar/narsese/ast.hpp"

namespace folnar::narsese {

class NarseseSyntaxError : public std::runtime_error {
 public:
  NarseseSyntaxError(std::size_t offset, std::string detail)
      : std::runtime_error("narsese syntax error at offset " +
                           std::to_string(offset) + ": " + detail),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

namespace detail {

enum class NTok {
  LAngle, RAngle, LParen, RParen, LBrace, RBrace,
  InhOp, ImpOp, ConjOp, NegOp, Star, Var, Ident, Dot, Question,
};

struct NToken {
  NTok kind;
  std::string text;
  int index = 0;
  std::size_t offset = 0;
};

inline std::vector<NToken> narsese_tokens(std::string_view s) {
  std::vector<NToken> out;
  std::size_t i = 0;
  auto push = [&](NTok k, std::size_t len) {
    out.push_back({k, std::string(s.substr(i, len)), 0, i});
    i += len;
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { ++i; continue; }
    switch (c) {
      case '<': push(NTok::LAngle, 1); continue;
      case '>': push(NTok::RAngle, 1); continue;
      case '(': push(NTok::LParen, 1); continue;
      case ')': push(NTok::RParen, 1); continue;
      case '{': push(NTok::LBrace, 1); continue;
      case '}': push(NTok::RBrace, 1); continue;
      case '.': push(NTok::Dot, 1); continue;
      case '?': push(NTok::Question, 1); continue;
      case '*': push(NTok::Star, 1); continue;
      default: break;
    }
    if (c == '-') {
      if (s.substr(i, 3) == "-->") { push(NTok::InhOp, 3); continue; }
      if (s.substr(i, 2) == "--") { push(NTok::NegOp, 2); continue; }
      throw NarseseSyntaxError(i, "stray '-'");
    }
    if (c == '=') {
      if (s.substr(i, 3) == "==>") { push(NTok::ImpOp, 3); continue; }
      throw NarseseSyntaxError(i, "stray '='");
    }
    if (c == '&') {
      if (s.substr(i, 2) == "&&") { push(NTok::ConjOp, 2); continue; }
      throw NarseseSyntaxError(i, "stray '&'");
    }
    if (c == '$') {
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i + 1) throw NarseseSyntaxError(i, "'$' without an index");
      int idx = std::stoi(std::string(s.substr(i + 1, j - i - 1)));
      if (idx < 1) throw NarseseSyntaxError(i, "variable index must be >= 1");
      out.push_back({NTok::Var, std::string(s.substr(i, j - i)), idx, i});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) {
        ++j;
      }
      out.push_back({NTok::Ident, std::string(s.substr(i, j - i)), 0, i});
      i = j;
      continue;
    }
    throw NarseseSyntaxError(i, "unexpected character '" + std::string(1, c) + "'");
  }
  return out;
}

class NarseseParser {
 public:
  NarseseParser(std::vector<NToken> tokens, std::size_t source_size)
      : tokens_(std::move(tokens)), size_(source_size) {}

  Sentence run() {
    Node n = parse_node();
    if (!std::holds_alternative<Statement::Ptr>(n)) {
      throw NarseseSyntaxError(0, "a bare term is not a sentence");
    }
    Punctuation p;
    if (check(NTok::Dot)) {
      advance();
      p = Punctuation::Judgment;
    } else if (check(NTok::Question)) {
      advance();
      p = Punctuation::Question;
    } else {
      throw NarseseSyntaxError(offset(), "expected '.' or '?'");
    }
    if (!at_end()) throw NarseseSyntaxError(offset(), "trailing input");
    return {std::get<Statement::Ptr>(n), p};
  }

 private:
  using Node = std::variant<Term::Ptr, Statement::Ptr>;

  bool at_end() const { return pos_ >= tokens_.size(); }
  const NToken& peek() const { return tokens_[pos_]; }
  bool check(NTok k) const { return !at_end() && peek().kind == k; }
  NToken advance() { return tokens_[pos_++]; }
  std::size_t offset() const { return at_end() ? size_ : peek().offset; }

  NToken expect(NTok k, const char* what) {
    if (!check(k)) throw NarseseSyntaxError(offset(), std::string("expected ") + what);
    return advance();
  }

  Term::Ptr term_of(Node n, std::size_t at) {
    if (!std::holds_alternative<Term::Ptr>(n)) {
      throw NarseseSyntaxError(at, "expected a term");
    }
    return std::get<Term::Ptr>(n);
  }

  Statement::Ptr statement_of(Node n, std::size_t at) {
    if (!std::holds_alternative<Statement::Ptr>(n)) {
      throw NarseseSyntaxError(at, "expected a statement");
    }
    return std::get<Statement::Ptr>(n);
  }

  Node parse_node() {
    if (check(NTok::LAngle)) {
      advance();
      Node n = parse_bracketed(NTok::RAngle);
      return n;
    }
    if (check(NTok::LParen)) {
      advance();
      if (check(NTok::NegOp)) {
        advance();
        std::size_t at = offset();
        Statement::Ptr inner = statement_of(parse_node(), at);
        expect(NTok::RParen, "')'");
        if (inner->kind() != Statement::Kind::Inheritance) {
          throw NarseseSyntaxError(at, "negation wraps an inheritance only");
        }
        return Node{Statement::negation(std::move(inner))};
      }
      return parse_bracketed(NTok::RParen);
    }
    if (check(NTok::LBrace)) {
      advance();
      NToken name = expect(NTok::Ident, "an individual name");
      expect(NTok::RBrace, "'}'");
      return Node{Term::individual(name.text)};
    }
    if (check(NTok::Var)) return Node{Term::variable(advance().index)};
    if (check(NTok::Ident)) return Node{Term::predicate(advance().text)};
    throw NarseseSyntaxError(offset(), "expected a term or statement");
  }

  // Called with the opener consumed; parses "X op Y" and the closer.
  Node parse_bracketed(NTok closing) {
    std::size_t left_at = offset();
    Node left = parse_node();
    if (check(NTok::InhOp)) {
      advance();
      std::size_t right_at = offset();
      Node right = parse_node();
      expect(closing, closing == NTok::RAngle ? "'>'" : "')'");
      return Node{Statement::inheritance(term_of(std::move(left), left_at),
                                         term_of(std::move(right), right_at))};
    }
    if (check(NTok::Star)) {
      if (closing != NTok::RParen) {
        throw NarseseSyntaxError(offset(), "products use parentheses");
      }
      advance();
      std::size_t right_at = offset();
      Node right = parse_node();
      expect(closing, "')'");
      return Node{Term::product(term_of(std::move(left), left_at),
                                term_of(std::move(right), right_at))};
    }
    if (check(NTok::ImpOp)) {
      advance();
      std::size_t right_at = offset();
      Node right = parse_node();
      expect(closing, closing == NTok::RAngle ? "'>'" : "')'");
      try {
        return Node{Statement::implication(
            statement_of(std::move(left), left_at),
            statement_of(std::move(right), right_at))};
      } catch (const std::invalid_argument& e) {
        throw NarseseSyntaxError(left_at, e.what());
      }
    }
    if (check(NTok::ConjOp)) {
      std::vector<Statement::Ptr> parts;
      auto add = [&](Statement::Ptr s, std::size_t at) {
        if (s->kind() == Statement::Kind::Conjunction) {
          for (const auto& p : s->parts()) parts.push_back(p);
        } else if (s->is_literal()) {
          parts.push_back(std::move(s));
        } else {
          throw NarseseSyntaxError(at, "conjunction parts must be literals");
        }
      };
      add(statement_of(std::move(left), left_at), left_at);
      while (check(NTok::ConjOp)) {
        advance();
        std::size_t at = offset();
        add(statement_of(parse_node(), at), at);
      }
      expect(closing, closing == NTok::RAngle ? "'>'" : "')'");
      return Node{Statement::conjunction(std::move(parts))};
    }
    throw NarseseSyntaxError(offset(), "expected '-->', '==>', '&&' or '*'");
  }

  std::vector<NToken> tokens_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses one serialized sentence (judgment or question).
inline Sentence parse_narsese(std::string_view text) {
  auto tokens = detail::narsese_tokens(text);
  if (tokens.empty()) throw NarseseSyntaxError(0, "empty input");
  return detail::NarseseParser(std::move(tokens), text.size()).run();
}

}  // namespace folnar::narsese
