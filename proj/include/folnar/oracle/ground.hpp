#pragma once

#include <string>
#include <tuple>
#include <vector>

namespace folnar::oracle {

struct GroundAtom {
  std::string predicate;
  std::vector<std::string> args;

  friend bool operator==(const GroundAtom& a, const GroundAtom& b) {
    return a.predicate == b.predicate && a.args == b.args;
  }
  friend bool operator<(const GroundAtom& a, const GroundAtom& b) {
    return std::tie(a.predicate, a.args) < std::tie(b.predicate, b.args);
  }
};

inline std::string to_string(const GroundAtom& a) {
  std::string out = a.predicate + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i > 0) out += ",";
    out += a.args[i];
  }
  return out + ")";
}

struct SignedLiteral {
  GroundAtom atom;
  bool positive = true;

  friend bool operator==(const SignedLiteral& a, const SignedLiteral& b) {
    return a.positive == b.positive && a.atom == b.atom;
  }
  friend bool operator<(const SignedLiteral& a, const SignedLiteral& b) {
    return std::tie(a.positive, a.atom) < std::tie(b.positive, b.atom);
  }
};

}  // namespace folnar::oracle
