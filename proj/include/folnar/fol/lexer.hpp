#pragma once

// Tokenizer for the FOL fragment. Accepts both Unicode connectives
// (forall sign, logical and/or, right arrow, circled plus, negation sign)
// and their ASCII spellings (forall, &, /\, |, \/, ->, xor, ~, !).

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "folnar/fol/errors.hpp"
#include "folnar/fol/normalize.hpp"

namespace folnar::fol {

enum class TokenKind {
  Ident,
  LParen,
  RParen,
  Comma,
  ForAll,
  Not,
  And,
  Or,
  Implies,
  Xor,
};

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t offset;
};

namespace detail {

inline bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Snippet for lexer diagnostics: the whole UTF-8 sequence when the bad
// byte starts one, otherwise the single byte.
inline std::string offending_snippet(std::string_view s, std::size_t i) {
  unsigned char c = static_cast<unsigned char>(s[i]);
  std::size_t len = 1;
  if ((c & 0xE0) == 0xC0) len = 2;
  else if ((c & 0xF0) == 0xE0) len = 3;
  else if ((c & 0xF8) == 0xF0) len = 4;
  if (i + len > s.size()) len = s.size() - i;
  return std::string(s.substr(i, len));
}

}  // namespace detail

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](TokenKind k, std::size_t at, std::size_t len) {
    out.push_back({k, std::string(text.substr(at, len)), at});
    i = at + len;
  };
  auto starts_with = [&](std::string_view prefix) {
    return text.substr(i, prefix.size()) == prefix;
  };

  while (i < text.size()) {
    char c = text[i];
    if (detail::is_space(c)) {
      ++i;
      continue;
    }
    if (detail::is_ident_start(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && detail::is_ident_char(text[j])) ++j;
      std::string_view word = text.substr(i, j - i);
      if (word == "forall") push(TokenKind::ForAll, i, word.size());
      else if (word == "xor") push(TokenKind::Xor, i, word.size());
      else if (word == "exists") throw UnsupportedQuantifier(i);
      else push(TokenKind::Ident, i, word.size());
      continue;
    }
    switch (c) {
      case '(': push(TokenKind::LParen, i, 1); continue;
      case ')': push(TokenKind::RParen, i, 1); continue;
      case ',': push(TokenKind::Comma, i, 1); continue;
      case '~':
      case '!': push(TokenKind::Not, i, 1); continue;
      case '&': push(TokenKind::And, i, 1); continue;
      case '|': push(TokenKind::Or, i, 1); continue;
      case '-':
        if (starts_with("->")) { push(TokenKind::Implies, i, 2); continue; }
        break;
      case '/':
        if (starts_with("/\\")) { push(TokenKind::And, i, 2); continue; }
        break;
      case '\\':
        if (starts_with("\\/")) { push(TokenKind::Or, i, 2); continue; }
        break;
      default:
        break;
    }
    if (starts_with("∀")) { push(TokenKind::ForAll, i, 3); continue; }
    if (starts_with("¬")) { push(TokenKind::Not, i, 2); continue; }
    if (starts_with("∧")) { push(TokenKind::And, i, 3); continue; }
    if (starts_with("∨")) { push(TokenKind::Or, i, 3); continue; }
    if (starts_with("→")) { push(TokenKind::Implies, i, 3); continue; }
    if (starts_with("⊕")) { push(TokenKind::Xor, i, 3); continue; }
    if (starts_with("∃")) throw UnsupportedQuantifier(i);
    throw LexError(i, detail::offending_snippet(text, i));
  }
  return out;
}

}  // namespace folnar::fol
