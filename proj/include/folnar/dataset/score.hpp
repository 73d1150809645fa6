#pragma once

// Scoring over three labels: confusion matrix, per-class precision/recall/F1
// with the 0/0 -> 0 convention, unweighted macro-F1, accuracy overall and per
// difficulty band, plus the execution success rate. Instances without a
// prediction score as Uncertain, mirroring a silent engine.

#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "folnar/dataset/instance.hpp"
#include "folnar/label.hpp"

namespace folnar::dataset {

class UnknownId : public std::runtime_error {
 public:
  explicit UnknownId(const std::string& id)
      : std::runtime_error("prediction for unknown instance id '" + id + "'"),
        id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Label axes are ordered True, False, Uncertain.
inline std::size_t label_index(Label l) {
  switch (l) {
    case Label::True: return 0;
    case Label::False: return 1;
    case Label::Uncertain: return 2;
  }
  return 2;
}

struct ScoreReport {
  double overall_accuracy = 0.0;
  // Ordered easy, medium, hard; a band with no instances reports 0.
  std::array<double, 3> accuracy_by_difficulty{};
  double macro_f1 = 0.0;
  std::array<std::array<std::size_t, 3>, 3> confusion{};  // [gold][predicted]
  std::array<ClassMetrics, 3> per_class{};
  double execution_success_rate = 0.0;
  std::vector<std::string> missing_predictions;
  std::size_t total = 0;
};

inline ScoreReport score(const std::map<std::string, Label>& predictions,
                         const std::vector<BenchmarkInstance>& instances,
                         const std::map<std::string, bool>& exec_flags = {}) {
  std::map<std::string, const BenchmarkInstance*> by_id;
  for (const auto& inst : instances) by_id[inst.id] = &inst;
  for (const auto& [id, label] : predictions)
    if (!by_id.count(id)) throw UnknownId(id);
  for (const auto& [id, flag] : exec_flags)
    if (!by_id.count(id)) throw UnknownId(id);

  ScoreReport report;
  report.total = instances.size();
  std::array<std::size_t, 3> band_hits{};
  std::array<std::size_t, 3> band_total{};
  std::size_t hits = 0;
  std::size_t executed = 0;

  for (const auto& inst : instances) {
    Label predicted = Label::Uncertain;
    if (auto it = predictions.find(inst.id); it != predictions.end()) {
      predicted = it->second;
    } else {
      report.missing_predictions.push_back(inst.id);
    }
    std::size_t g = label_index(inst.gold_label);
    std::size_t p = label_index(predicted);
    ++report.confusion[g][p];

    std::size_t band = static_cast<std::size_t>(inst.difficulty);
    ++band_total[band];
    if (g == p) {
      ++hits;
      ++band_hits[band];
    }
    if (auto it = exec_flags.find(inst.id);
        it != exec_flags.end() && it->second)
      ++executed;
  }

  auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  report.overall_accuracy = ratio(hits, instances.size());
  for (std::size_t b = 0; b < 3; ++b)
    report.accuracy_by_difficulty[b] = ratio(band_hits[b], band_total[b]);
  report.execution_success_rate = ratio(executed, instances.size());

  double f1_sum = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    std::size_t tp = report.confusion[c][c];
    std::size_t predicted_c = 0;
    std::size_t gold_c = 0;
    for (std::size_t o = 0; o < 3; ++o) {
      predicted_c += report.confusion[o][c];
      gold_c += report.confusion[c][o];
    }
    ClassMetrics& m = report.per_class[c];
    m.precision = ratio(tp, predicted_c);
    m.recall = ratio(tp, gold_c);
    m.f1 = (m.precision + m.recall) == 0.0
               ? 0.0
               : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    f1_sum += m.f1;
  }
  report.macro_f1 = f1_sum / 3.0;
  return report;
}

}  // namespace folnar::dataset
