#pragma once

// Text cleanup applied before lexing. Dataset sentences arrive with list
// bullets, label prefixes like "fact7:" or "rule5:", surrounding quotes and
// trailing punctuation; normalize strips all of it and is idempotent.

#include <array>
#include <cctype>
#include <string>
#include <string_view>

namespace folnar::fol {

namespace detail {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// One cleanup pass; normalize() iterates it to a fixed point.
inline std::string normalize_pass(std::string_view s) {
  s = trim(s);

  static constexpr std::array<std::string_view, 3> kBullets = {"-", "*", "•"};
  for (bool stripped = true; stripped;) {
    stripped = false;
    for (auto bullet : kBullets) {
      if (s.size() > bullet.size() && s.substr(0, bullet.size()) == bullet &&
          is_space(s[bullet.size()])) {
        s.remove_prefix(bullet.size());
        s = trim(s);
        stripped = true;
      }
    }
  }

  static constexpr std::array<std::string_view, 6> kQuotes = {
      "\"", "'", "“", "”", "‘", "’"};
  for (auto q : kQuotes) {
    if (s.size() >= q.size() && s.substr(0, q.size()) == q) {
      s.remove_prefix(q.size());
      break;
    }
  }
  for (auto q : kQuotes) {
    if (s.size() >= q.size() && s.substr(s.size() - q.size()) == q) {
      s.remove_suffix(q.size());
      break;
    }
  }

  // Label prefix: letters, optional digits, optional space, then a colon.
  std::size_t i = 0;
  while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
  if (i > 0) {
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    std::size_t k = j;
    while (k < s.size() && is_space(s[k])) ++k;
    if (k < s.size() && s[k] == ':') s.remove_prefix(k + 1);
  }

  while (!s.empty() && (s.back() == '.' || s.back() == ';' || s.back() == ',')) {
    s.remove_suffix(1);
  }

  return std::string(trim(s));
}

}  // namespace detail

inline std::string normalize(std::string_view raw) {
  std::string cur(detail::trim(raw));
  for (;;) {
    std::string next = detail::normalize_pass(cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

}  // namespace folnar::fol
