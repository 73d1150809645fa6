#pragma once

// Retention loop: parse the FOL fields, compile, execute under the chosen
// mode, and keep the instance only when the executed label matches gold.
// Failures never abort the batch; they surface as unretained outcomes with
// the error text attached and no executed label.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "folnar/compiler/compile.hpp"
#include "folnar/dataset/instance.hpp"
#include "folnar/engine/runner.hpp"
#include "folnar/fol/parser.hpp"
#include "folnar/label.hpp"
#include "folnar/oracle/chase.hpp"
#include "folnar/oracle/models.hpp"

namespace folnar::dataset {

enum class ValidationMode { Engine, Chase, Models };

inline std::string to_string(ValidationMode m) {
  switch (m) {
    case ValidationMode::Engine: return "engine";
    case ValidationMode::Chase: return "chase";
    case ValidationMode::Models: return "models";
  }
  return "engine";
}

struct ValidationOutcome {
  std::string id;
  std::optional<Label> executed_label;
  Label gold_label = Label::Uncertain;
  bool retained = false;
  // Which evaluator produced the label; the verdict is kept in engine mode.
  std::string provenance;
  std::optional<engine::EngineVerdict> verdict;
  std::string error;
};

inline ValidationOutcome validate_one(const BenchmarkInstance& inst,
                                      ValidationMode mode,
                                      const engine::EngineConfig& cfg) {
  ValidationOutcome out;
  out.id = inst.id;
  out.gold_label = inst.gold_label;
  out.provenance = to_string(mode);
  try {
    compiler::CompileUnit unit;
    for (const auto& premise : inst.fol_premises)
      unit.premises.push_back(fol::parse_fol(premise));
    unit.conclusion = fol::parse_fol(inst.fol_conclusion);
    auto report = compiler::compile_unit(unit);

    switch (mode) {
      case ValidationMode::Models:
        out.executed_label = oracle::entail_models(unit);
        break;
      case ValidationMode::Chase:
        out.executed_label =
            oracle::chase_compiled(report.program, oracle::unit_constants(unit));
        break;
      case ValidationMode::Engine: {
        auto verdict = engine::execute(report.program, cfg);
        out.executed_label = engine::map_label(verdict, cfg);
        out.verdict = std::move(verdict);
        break;
      }
    }
    out.retained = out.executed_label == inst.gold_label;
  } catch (const std::exception& e) {
    out.executed_label.reset();
    out.retained = false;
    out.error = e.what();
  }
  return out;
}

inline std::vector<ValidationOutcome> validate(
    const std::vector<BenchmarkInstance>& instances, ValidationMode mode,
    const engine::EngineConfig& cfg = {}, unsigned jobs = 1) {
  std::vector<ValidationOutcome> outcomes(instances.size());
  if (jobs <= 1 || instances.size() <= 1) {
    for (std::size_t i = 0; i < instances.size(); ++i)
      outcomes[i] = validate_one(instances[i], mode, cfg);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= instances.size()) return;
        outcomes[i] = validate_one(instances[i], mode, cfg);
      }
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<std::size_t>(jobs, instances.size());
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::sort(outcomes.begin(), outcomes.end(),
            [](const ValidationOutcome& a, const ValidationOutcome& b) {
              return a.id < b.id;
            });
  return outcomes;
}

}  // namespace folnar::dataset
