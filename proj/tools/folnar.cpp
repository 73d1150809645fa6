// Command-line front door for the pipeline: compile FOL to Narsese, run
// programs against an engine or a desk oracle, validate and score benchmark
// files, and print split statistics.
//
// Exit codes: 0 ok, 1 internal, 2 parse error, 3 unsupported pattern,
// 4 engine failure, 5 schema or file error. Retention failures and
// per-instance errors are data, not process failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "folnar/compiler/compile.hpp"
#include "folnar/compiler/errors.hpp"
#include "folnar/dataset/export.hpp"
#include "folnar/dataset/io.hpp"
#include "folnar/dataset/score.hpp"
#include "folnar/dataset/stats.hpp"
#include "folnar/dataset/validate.hpp"
#include "folnar/engine/runner.hpp"
#include "folnar/fol/errors.hpp"
#include "folnar/fol/parser.hpp"
#include "folnar/narsese/serialize.hpp"
#include "folnar/oracle/agreement.hpp"
#include "folnar/oracle/errors.hpp"

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitParse = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitEngine = 4;
constexpr int kExitSchema = 5;

using json = nlohmann::ordered_json;

struct EngineFlags {
  std::string engine_path;
  int cycles = 20;
  int post_cycles = 20;
  long timeout_ms = 10000;
  double true_threshold = 0.50;
  double false_threshold = 0.05;
};

void add_engine_flags(CLI::App* cmd, EngineFlags& flags) {
  cmd->add_option("--engine", flags.engine_path,
                  "Engine command; whitespace-split into argv")
      ->envname("NARS_ENGINE_PATH");
  cmd->add_option("--cycles", flags.cycles, "Inference cycles before the query")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--post-cycles", flags.post_cycles,
                  "Inference cycles after the query")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--timeout-ms", flags.timeout_ms,
                  "Engine wall-clock budget per instance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--true-threshold", flags.true_threshold,
                  "Minimum answer frequency mapped to True")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--false-threshold", flags.false_threshold,
                  "Maximum answer frequency mapped to False")
      ->check(CLI::Range(0.0, 1.0));
}

folnar::engine::EngineConfig engine_config(const EngineFlags& flags) {
  folnar::engine::EngineConfig cfg;
  cfg.executable_path = flags.engine_path;
  cfg.pre_query_cycles = flags.cycles;
  cfg.post_query_cycles = flags.post_cycles;
  cfg.timeout = std::chrono::milliseconds(flags.timeout_ms);
  cfg.true_threshold = flags.true_threshold;
  cfg.false_threshold = flags.false_threshold;
  cfg.validate();
  return cfg;
}

folnar::dataset::ValidationMode parse_mode(const std::string& mode) {
  if (mode == "engine") return folnar::dataset::ValidationMode::Engine;
  if (mode == "chase") return folnar::dataset::ValidationMode::Chase;
  return folnar::dataset::ValidationMode::Models;
}

// Shared input shape for compile and oracle: a file of FOL lines or inline
// premises, with the conclusion from --query or the final line.
struct UnitInput {
  std::string file;
  std::vector<std::string> premises;
  std::string query;
};

void add_unit_input(CLI::App* cmd, UnitInput& input) {
  auto* file = cmd->add_option("file", input.file,
                               "File of FOL lines, conclusion last");
  auto* premise = cmd->add_option("-p,--premise", input.premises,
                                  "Inline FOL premise (repeatable)");
  cmd->add_option("-q,--query", input.query,
                  "FOL conclusion; overrides the final-line convention");
  premise->excludes(file);
}

struct NamedFormulas {
  std::vector<std::pair<std::string, std::string>> premises;  // label, text
  std::pair<std::string, std::string> conclusion;
};

NamedFormulas gather_unit(const UnitInput& input) {
  std::vector<std::string> lines = input.premises;
  if (!input.file.empty()) {
    std::ifstream in(input.file);
    if (!in)
      throw folnar::dataset::SchemaError(0, "",
                                         "cannot open '" + input.file + "'");
    std::string line;
    while (std::getline(in, line)) {
      auto end = line.find_last_not_of(" \t\r");
      if (end == std::string::npos) continue;
      lines.push_back(line.substr(0, end + 1));
    }
  }
  NamedFormulas named;
  std::string conclusion = input.query;
  if (conclusion.empty()) {
    if (lines.empty())
      throw folnar::fol::ParseError(0, "at least one formula", "empty input");
    conclusion = lines.back();
    lines.pop_back();
  }
  for (std::size_t i = 0; i < lines.size(); ++i)
    named.premises.emplace_back("premise " + std::to_string(i), lines[i]);
  named.conclusion = {"conclusion", conclusion};
  return named;
}

folnar::compiler::CompileUnit parse_unit(const NamedFormulas& named) {
  folnar::compiler::CompileUnit unit;
  auto parse_named = [](const std::pair<std::string, std::string>& entry) {
    try {
      return folnar::fol::parse_fol(entry.second);
    } catch (const folnar::fol::FrontendError& e) {
      throw folnar::fol::FrontendError(entry.first + ": " + e.what(),
                                       e.offset());
    }
  };
  for (const auto& entry : named.premises)
    unit.premises.push_back(parse_named(entry));
  unit.conclusion = parse_named(named.conclusion);
  return unit;
}

std::string frequency_text(const std::optional<double>& f) {
  if (!f) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", *f);
  return buf;
}

std::string label_text(const std::optional<folnar::Label>& l) {
  return l ? folnar::to_string(*l) : "-";
}

int cmd_compile(const UnitInput& input, bool report_block,
                const std::string& out_path) {
  auto named = gather_unit(input);
  auto unit = parse_unit(named);
  auto report = folnar::compiler::compile_unit(unit);

  std::ostringstream out;
  for (const auto& line : folnar::narsese::program_lines(report.program))
    out << line << '\n';
  if (report_block) {
    out << "// fallback: "
        << (report.fallback_used ? "'" + *report.fallback_subformula + "'"
                                 : std::string("none"))
        << '\n';
    for (std::size_t i = 0; i < report.source_map.size(); ++i) {
      out << "// premise " << i << " -> lines ";
      for (std::size_t j = 0; j < report.source_map[i].size(); ++j)
        out << (j ? "," : "") << report.source_map[i][j];
      out << '\n';
    }
  }
  if (out_path.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream file(out_path);
    if (!file)
      throw folnar::dataset::SchemaError(0, "",
                                         "cannot open '" + out_path + "'");
    file << out.str();
  }
  return 0;
}

int cmd_oracle(const UnitInput& input, const std::string& format) {
  auto unit = parse_unit(gather_unit(input));
  auto result = folnar::oracle::agreement_check(unit);
  if (format == "json-lines") {
    json record;
    record["models"] = folnar::to_string(result.models_label);
    record["chase"] =
        result.chase_label ? json(folnar::to_string(*result.chase_label))
                           : json(nullptr);
    record["agreement"] = folnar::oracle::to_string(result.verdict);
    record["note"] = result.note;
    std::cout << record.dump() << '\n';
  } else {
    std::cout << "models     " << folnar::to_string(result.models_label)
              << '\n';
    std::cout << "chase      " << label_text(result.chase_label) << '\n';
    std::cout << "agreement  " << folnar::oracle::to_string(result.verdict)
              << '\n';
    if (!result.note.empty()) std::cout << "note       " << result.note << '\n';
  }
  return 0;
}

int require_engine_configured(const folnar::dataset::ValidationMode mode,
                              const folnar::engine::EngineConfig& cfg) {
  if (mode == folnar::dataset::ValidationMode::Engine &&
      cfg.executable_path.find_first_not_of(" \t") == std::string::npos) {
    std::cerr << "error: engine mode needs --engine or NARS_ENGINE_PATH\n";
    return kExitEngine;
  }
  return 0;
}

int cmd_run(const std::string& path, const std::string& mode_name,
            const EngineFlags& flags, const std::string& format,
            unsigned jobs) {
  auto cfg = engine_config(flags);
  auto mode = parse_mode(mode_name);
  if (int rc = require_engine_configured(mode, cfg)) return rc;
  auto instances = folnar::dataset::load_instances(path);
  auto outcomes = folnar::dataset::validate(instances, mode, cfg, jobs);
  for (const auto& o : outcomes) {
    std::optional<double> freq;
    if (o.verdict && o.verdict->frequency) freq = o.verdict->frequency;
    if (format == "json-lines") {
      json record;
      record["id"] = o.id;
      if (o.error.empty()) {
        record["label"] = label_text(o.executed_label);
        record["frequency"] = freq ? json(*freq) : json(nullptr);
      } else {
        record["error"] = o.error;
      }
      std::cout << record.dump() << '\n';
    } else {
      if (o.error.empty()) {
        std::cout << o.id << '\t' << label_text(o.executed_label) << '\t'
                  << frequency_text(freq) << '\n';
      } else {
        std::cout << o.id << '\t' << "error" << '\t' << o.error << '\n';
      }
    }
  }
  return 0;
}

int cmd_validate(const std::string& path, const std::string& mode_name,
                 const EngineFlags& flags, const std::string& format,
                 unsigned jobs) {
  auto cfg = engine_config(flags);
  auto mode = parse_mode(mode_name);
  if (int rc = require_engine_configured(mode, cfg)) return rc;
  auto instances = folnar::dataset::load_instances(path);
  auto outcomes = folnar::dataset::validate(instances, mode, cfg, jobs);
  std::size_t retained = 0;
  for (const auto& o : outcomes) retained += o.retained ? 1 : 0;

  for (const auto& o : outcomes) {
    if (format == "json-lines") {
      json record;
      record["id"] = o.id;
      record["gold"] = folnar::to_string(o.gold_label);
      record["executed"] = o.executed_label
                               ? json(folnar::to_string(*o.executed_label))
                               : json(nullptr);
      record["retained"] = o.retained;
      if (!o.error.empty()) record["error"] = o.error;
      std::cout << record.dump() << '\n';
    } else {
      std::cout << o.id << '\t' << folnar::to_string(o.gold_label) << '\t'
                << label_text(o.executed_label) << '\t'
                << (o.retained ? "retained" : "dropped");
      if (!o.error.empty()) std::cout << '\t' << o.error;
      std::cout << '\n';
    }
  }
  std::ostream& summary = format == "json-lines" ? std::cerr : std::cout;
  summary << "retained " << retained << "/" << outcomes.size() << '\n';
  return 0;
}

int cmd_stats(const std::string& path, const std::string& format) {
  auto instances = folnar::dataset::load_instances(path);
  auto s = folnar::dataset::stats(instances);
  auto row = [&](const std::string& name,
                 const folnar::dataset::DifficultyCounts& c) {
    if (format == "json-lines") {
      json record;
      record["split"] = name;
      record["easy"] = c.easy;
      record["medium"] = c.medium;
      record["hard"] = c.hard;
      record["total"] = c.total();
      std::cout << record.dump() << '\n';
    } else {
      std::printf("%-10s %6zu %6zu %6zu %6zu\n", name.c_str(), c.easy,
                  c.medium, c.hard, c.total());
    }
  };
  if (format != "json-lines")
    std::printf("%-10s %6s %6s %6s %6s\n", "split", "easy", "medium", "hard",
                "total");
  for (const auto& [name, counts] : s.by_split) row(name, counts);
  row("total", s.overall);
  return 0;
}

int cmd_score(const std::string& data_path, const std::string& pred_path,
              const std::string& format) {
  auto instances = folnar::dataset::load_instances(data_path);

  std::map<std::string, folnar::Label> predictions;
  std::map<std::string, bool> exec_flags;
  std::ifstream in(pred_path);
  if (!in)
    throw folnar::dataset::SchemaError(0, "",
                                       "cannot open '" + pred_path + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw folnar::dataset::SchemaError(line_no, "",
                                         std::string("invalid JSON: ") +
                                             e.what());
    }
    if (!record.contains("id") || !record["id"].is_string())
      throw folnar::dataset::SchemaError(line_no, "id", "missing or not a string");
    if (!record.contains("label") || !record["label"].is_string())
      throw folnar::dataset::SchemaError(line_no, "label",
                                         "missing or not a string");
    std::string id = record["id"].get<std::string>();
    try {
      predictions[id] =
          folnar::label_from_string(record["label"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw folnar::dataset::SchemaError(line_no, "label", e.what());
    }
    if (record.contains("executed")) {
      if (!record["executed"].is_boolean())
        throw folnar::dataset::SchemaError(line_no, "executed",
                                           "expected a boolean");
      exec_flags[id] = record["executed"].get<bool>();
    }
  }

  folnar::dataset::ScoreReport report;
  try {
    report = folnar::dataset::score(predictions, instances, exec_flags);
  } catch (const folnar::dataset::UnknownId& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSchema;
  }

  static const char* kClasses[3] = {"True", "False", "Uncertain"};
  if (format == "json-lines") {
    json record;
    record["total"] = report.total;
    record["accuracy"] = report.overall_accuracy;
    record["accuracy_easy"] = report.accuracy_by_difficulty[0];
    record["accuracy_medium"] = report.accuracy_by_difficulty[1];
    record["accuracy_hard"] = report.accuracy_by_difficulty[2];
    record["macro_f1"] = report.macro_f1;
    record["execution_success_rate"] = report.execution_success_rate;
    for (std::size_t c = 0; c < 3; ++c) {
      json cls;
      cls["precision"] = report.per_class[c].precision;
      cls["recall"] = report.per_class[c].recall;
      cls["f1"] = report.per_class[c].f1;
      record["per_class"][kClasses[c]] = cls;
    }
    record["confusion"] = report.confusion;
    record["missing_predictions"] = report.missing_predictions;
    std::cout << record.dump() << '\n';
  } else {
    std::printf("instances               %zu\n", report.total);
    std::printf("accuracy                %.4f\n", report.overall_accuracy);
    std::printf("accuracy easy           %.4f\n",
                report.accuracy_by_difficulty[0]);
    std::printf("accuracy medium         %.4f\n",
                report.accuracy_by_difficulty[1]);
    std::printf("accuracy hard           %.4f\n",
                report.accuracy_by_difficulty[2]);
    std::printf("macro F1                %.4f\n", report.macro_f1);
    std::printf("execution success rate  %.4f\n",
                report.execution_success_rate);
    std::printf("%-10s %9s %9s %9s\n", "class", "precision", "recall", "f1");
    for (std::size_t c = 0; c < 3; ++c)
      std::printf("%-10s %9.4f %9.4f %9.4f\n", kClasses[c],
                  report.per_class[c].precision, report.per_class[c].recall,
                  report.per_class[c].f1);
    std::printf("confusion (rows gold, cols predicted; True/False/Uncertain)\n");
    for (std::size_t g = 0; g < 3; ++g)
      std::printf("%-10s %6zu %6zu %6zu\n", kClasses[g],
                  report.confusion[g][0], report.confusion[g][1],
                  report.confusion[g][2]);
    if (!report.missing_predictions.empty())
      std::printf("missing predictions     %zu (scored Uncertain)\n",
                  report.missing_predictions.size());
  }
  return 0;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const folnar::fol::FrontendError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const folnar::narsese::NarseseSyntaxError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const folnar::compiler::UnsupportedPattern& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const folnar::compiler::UnsupportedArity& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const folnar::compiler::NoQueryableSubformula& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const folnar::fol::UnboundVariable& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const folnar::engine::EngineSpawnError& e) {
    std::cerr << "engine error: " << e.what() << '\n';
    return kExitEngine;
  } catch (const folnar::engine::EngineProtocolError& e) {
    std::cerr << "engine error: " << e.what() << '\n';
    return kExitEngine;
  } catch (const folnar::dataset::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kExitSchema;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FOL to Narsese compiler and reasoning benchmark harness"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "table";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "json-lines"}))
      ->capture_default_str();

  UnitInput compile_input;
  bool compile_report = false;
  std::string compile_out;
  auto* compile = app.add_subcommand(
      "compile", "Compile FOL premises and a conclusion to Narsese");
  add_unit_input(compile, compile_input);
  compile->add_flag("--report", compile_report,
                    "Append fallback and source-map comments");
  compile->add_option("-o,--output", compile_out, "Write program here");

  UnitInput oracle_input;
  auto* oracle = app.add_subcommand(
      "oracle", "Label a unit with both desk oracles and compare");
  add_unit_input(oracle, oracle_input);

  std::string run_file;
  std::string run_mode = "engine";
  EngineFlags run_flags;
  unsigned run_jobs = 1;
  auto* run = app.add_subcommand("run", "Execute instances and print labels");
  run->add_option("file", run_file, "Benchmark JSONL file")
      ->required();
  run->add_option("--mode", run_mode, "Evaluator")
      ->check(CLI::IsMember({"engine", "chase", "models"}))
      ->capture_default_str();
  run->add_option("--jobs", run_jobs, "Parallel instances")
      ->check(CLI::PositiveNumber);
  add_engine_flags(run, run_flags);

  std::string validate_file;
  std::string validate_mode = "engine";
  EngineFlags validate_flags;
  unsigned validate_jobs = 1;
  auto* validate =
      app.add_subcommand("validate", "Run the retention filter over instances");
  validate->add_option("file", validate_file, "Benchmark JSONL file")
      ->required();
  validate->add_option("--mode", validate_mode, "Evaluator")
      ->check(CLI::IsMember({"engine", "chase", "models"}))
      ->capture_default_str();
  validate->add_option("--jobs", validate_jobs, "Parallel instances")
      ->check(CLI::PositiveNumber);
  add_engine_flags(validate, validate_flags);

  std::string stats_file;
  auto* stats_cmd =
      app.add_subcommand("stats", "Count instances by split and difficulty");
  stats_cmd->add_option("file", stats_file, "Benchmark JSONL file")
      ->required();

  std::string score_data;
  std::string score_pred;
  auto* score_cmd =
      app.add_subcommand("score", "Score a prediction file against gold");
  score_cmd->add_option("file", score_data, "Benchmark JSONL file")
      ->required();
  score_cmd
      ->add_option("--predictions", score_pred,
                   "JSONL with id, label, optional executed flag")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (compile->parsed())
    return guarded(
        [&] { return cmd_compile(compile_input, compile_report, compile_out); });
  if (oracle->parsed())
    return guarded([&] { return cmd_oracle(oracle_input, format); });
  if (run->parsed())
    return guarded(
        [&] { return cmd_run(run_file, run_mode, run_flags, format, run_jobs); });
  if (validate->parsed())
    return guarded([&] {
      return cmd_validate(validate_file, validate_mode, validate_flags, format,
                          validate_jobs);
    });
  if (stats_cmd->parsed())
    return guarded([&] { return cmd_stats(stats_file, format); });
  if (score_cmd->parsed())
    return guarded([&] { return cmd_score(score_data, score_pred, format); });
  return kExitInternal;
}
