#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace folnar {

// Three-valued entailment verdict. Serialized as full words in datasets
// and reports; the classification export abbreviates True/False/Uncertain
// to A/B/C.
enum class Label { True, False, Uncertain };

inline std::string to_string(Label l) {
  switch (l) {
    case Label::True: return "True";
    case Label::False: return "False";
    case Label::Uncertain: return "Uncertain";
  }
  return "Uncertain";
}

inline Label label_from_string(std::string_view s) {
  if (s == "True") return Label::True;
  if (s == "False") return Label::False;
  if (s == "Uncertain") return Label::Uncertain;
  throw std::invalid_argument("unknown label '" + std::string(s) + "'");
}

inline char to_letter(Label l) {
  switch (l) {
    case Label::True: return 'A';
    case Label::False: return 'B';
    case Label::Uncertain: return 'C';
  }
  return 'C';
}

inline Label label_from_letter(char c) {
  switch (c) {
    case 'A': return Label::True;
    case 'B': return Label::False;
    case 'C': return Label::Uncertain;
    default: throw std::invalid_argument(std::string("unknown letter '") + c + "'");
  }
}

}  // namespace folnar
