#pragma once

// Bundled 30-instance corpus: rule chains with genuine step counts, ten per
// difficulty band. Gold labels are derived by the model-enumeration oracle at
// construction time, then exactly two are flipped (and marked) so retention
// tests have known casualties. Everything is deterministic; the checked-in
// JSONL file is byte-identical to save(make_synthetic_corpus()).

#include <cctype>
#include <string>
#include <vector>

#include "folnar/compiler/compile.hpp"
#include "folnar/dataset/instance.hpp"
#include "folnar/fol/parser.hpp"
#include "folnar/narsese/serialize.hpp"
#include "folnar/oracle/models.hpp"

namespace folnar::dataset {

namespace detail {

inline std::string capitalize(std::string word) {
  if (!word.empty())
    word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
  return word;
}

inline Label flip_label(Label l) {
  switch (l) {
    case Label::True: return Label::False;
    case Label::False: return Label::Uncertain;
    case Label::Uncertain: return Label::True;
  }
  return Label::True;
}

}  // namespace detail

inline std::vector<BenchmarkInstance> make_synthetic_corpus() {
  static const char* kNames[30] = {
      "casey", "robin",  "arden",  "blake", "sage",  "rowan",
      "ellis", "quinn",  "tatum",  "avery", "marlow", "devin",
      "ira",   "jules",  "kendall", "logan", "micah", "noor",
      "perry", "reese",  "shay",   "toni",  "uma",   "vic",
      "wren",  "yael",   "zion",   "amari", "briar", "cleo"};
  static const char* kAdjectives[12] = {
      "swift", "nimble", "agile",  "keen", "bright", "steady",
      "bold",  "calm",   "wary",   "deft", "sturdy", "quick"};
  // Label cycle gives each band 4 True, 3 False, 3 Uncertain.
  static const Label kLabels[10] = {
      Label::True,      Label::False, Label::Uncertain, Label::True,
      Label::False,     Label::Uncertain, Label::True,  Label::False,
      Label::Uncertain, Label::True};
  static const int kSteps[3][10] = {{1, 2, 1, 2, 1, 2, 1, 2, 1, 2},
                                    {3, 4, 5, 3, 4, 5, 3, 4, 5, 3},
                                    {6, 7, 8, 9, 6, 7, 8, 9, 6, 7}};
  // Gold labels flipped after oracle derivation, one easy and one hard.
  static const std::size_t kCorrupted[2] = {6, 21};

  std::vector<BenchmarkInstance> corpus;
  for (std::size_t index = 0; index < 30; ++index) {
    std::size_t band = index / 10;
    std::size_t slot = index % 10;
    int steps = kSteps[band][slot];
    Label shape = kLabels[slot];
    std::string name = kNames[index];
    const char* aux = kAdjectives[11];
    bool conjunctive_start = index % 4 == 3;

    std::vector<std::string> premises;
    std::vector<std::string> sentences;
    premises.push_back(std::string(kAdjectives[0]) + "(" + name + ")");
    sentences.push_back(detail::capitalize(name) + " is " + kAdjectives[0] +
                        ".");
    if (conjunctive_start) {
      premises.push_back(std::string(aux) + "(" + name + ")");
      sentences.push_back(detail::capitalize(name) + " is " + aux + ".");
    }
    for (int i = 0; i < steps; ++i) {
      std::string from = kAdjectives[i];
      std::string to = kAdjectives[i + 1];
      bool negated_head = shape == Label::False && i == steps - 1;
      if (i == 0 && conjunctive_start) {
        premises.push_back("forall x (" + from + "(x) & " + aux + "(x) -> " +
                           (negated_head ? "~" : "") + to + "(x))");
        sentences.push_back("Everyone who is both " + from + " and " + aux +
                            " is " + (negated_head ? "not " : "") + to + ".");
      } else {
        premises.push_back("forall x (" + from + "(x) -> " +
                           (negated_head ? "~" : "") + to + "(x))");
        sentences.push_back("Everyone who is " + from + " is " +
                            (negated_head ? "not " : "") + to + ".");
      }
    }
    std::string claim_adj = shape == Label::Uncertain
                                ? kAdjectives[steps + 1]
                                : kAdjectives[steps];
    std::string conclusion = claim_adj + "(" + name + ")";

    BenchmarkInstance inst;
    inst.id = "syn-" + std::string(index + 1 < 10 ? "00" : "0") +
              std::to_string(index + 1);
    inst.split = "dev";
    inst.steps = steps;
    inst.difficulty = difficulty_band(steps);
    inst.fol_premises = premises;
    inst.fol_conclusion = conclusion;
    std::string context;
    for (const auto& s : sentences) {
      if (!context.empty()) context += ' ';
      context += s;
    }
    inst.context_nl = context;
    inst.claim_nl = detail::capitalize(name) + " is " + claim_adj + ".";

    compiler::CompileUnit unit;
    for (const auto& p : premises) unit.premises.push_back(fol::parse_fol(p));
    unit.conclusion = fol::parse_fol(conclusion);
    inst.gold_label = oracle::entail_models(unit);

    auto report = compiler::compile_unit(unit);
    auto lines = narsese::program_lines(report.program);
    inst.narsese_query = lines.back();
    lines.pop_back();
    inst.narsese_program = std::move(lines);
    corpus.push_back(std::move(inst));
  }

  for (std::size_t index : kCorrupted) {
    corpus[index].gold_label = detail::flip_label(corpus[index].gold_label);
    corpus[index].extras["corrupted"] = true;
  }
  return corpus;
}

}  // namespace folnar::dataset
