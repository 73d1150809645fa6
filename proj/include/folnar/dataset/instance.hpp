#pragma once

// Benchmark record format. Difficulty names a band over reasoning-step
// counts; the two must stay consistent, so loads enforce the mapping.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "folnar/label.hpp"

namespace folnar::dataset {

class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::size_t line, std::string field, std::string reason)
      : std::runtime_error("line " + std::to_string(line) +
                           (field.empty() ? "" : ", field '" + field + "'") +
                           ": " + reason),
        line_(line),
        field_(std::move(field)),
        reason_(std::move(reason)) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string field_;
  std::string reason_;
};

enum class Difficulty { Easy, Medium, Hard };

inline std::string to_string(Difficulty d) {
  switch (d) {
    case Difficulty::Easy: return "easy";
    case Difficulty::Medium: return "medium";
    case Difficulty::Hard: return "hard";
  }
  return "easy";
}

inline Difficulty difficulty_from_string(std::string_view s) {
  if (s == "easy") return Difficulty::Easy;
  if (s == "medium") return Difficulty::Medium;
  if (s == "hard") return Difficulty::Hard;
  throw std::invalid_argument("unknown difficulty '" + std::string(s) + "'");
}

// easy: 1-2 steps, medium: 3-5, hard: 6-9.
inline Difficulty difficulty_band(int steps) {
  if (steps >= 1 && steps <= 2) return Difficulty::Easy;
  if (steps >= 3 && steps <= 5) return Difficulty::Medium;
  if (steps >= 6 && steps <= 9) return Difficulty::Hard;
  throw std::invalid_argument("steps must lie in [1,9], got " +
                              std::to_string(steps));
}

struct BenchmarkInstance {
  std::string id;
  std::optional<std::string> split;
  Difficulty difficulty = Difficulty::Easy;
  int steps = 1;
  std::string context_nl;
  std::string claim_nl;
  std::vector<std::string> fol_premises;
  std::string fol_conclusion;
  Label gold_label = Label::Uncertain;
  std::optional<std::vector<std::string>> narsese_program;
  std::optional<std::string> narsese_query;
  // Unrecognized fields, kept in input order so round-trips preserve them.
  nlohmann::ordered_json extras = nlohmann::ordered_json::object();

  bool operator==(const BenchmarkInstance& o) const {
    return id == o.id && split == o.split && difficulty == o.difficulty &&
           steps == o.steps && context_nl == o.context_nl &&
           claim_nl == o.claim_nl && fol_premises == o.fol_premises &&
           fol_conclusion == o.fol_conclusion && gold_label == o.gold_label &&
           narsese_program == o.narsese_program &&
           narsese_query == o.narsese_query && extras == o.extras;
  }
};

}  // namespace folnar::dataset
