#pragma once

// Execution protocol against a NARS engine: judgments first, a numeric
// cycle-step line, the query, a second cycle line, then the transcript is
// scanned for answer lines. The same parsing path serves both live
// subprocesses and scripted transcripts, so the suite runs engine-free.

#include <chrono>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "folnar/engine/process.hpp"
#include "folnar/label.hpp"
#include "folnar/narsese/ast.hpp"
#include "folnar/narsese/serialize.hpp"

namespace folnar::engine {

struct EngineConfig {
  std::string executable_path;
  int pre_query_cycles = 20;
  int post_query_cycles = 20;
  std::chrono::milliseconds timeout{10000};
  double true_threshold = 0.50;
  double false_threshold = 0.05;

  void validate() const {
    if (pre_query_cycles <= 0 || post_query_cycles <= 0)
      throw std::invalid_argument("cycle counts must be positive");
    if (timeout.count() <= 0)
      throw std::invalid_argument("timeout must be positive");
    if (true_threshold < 0.0 || true_threshold > 1.0 ||
        false_threshold < 0.0 || false_threshold > 1.0)
      throw std::invalid_argument("thresholds must lie in [0,1]");
    if (!(false_threshold < true_threshold))
      throw std::invalid_argument(
          "false_threshold must be below true_threshold");
  }
};

struct EngineVerdict {
  bool answered = false;
  bool timed_out = false;
  std::optional<double> frequency;
  std::optional<double> confidence;
  std::vector<std::string> raw_lines;
  std::chrono::milliseconds wall_time{0};
};

inline Label map_label(const EngineVerdict& v, const EngineConfig& cfg) {
  if (!v.answered || !v.frequency) return Label::Uncertain;
  if (*v.frequency >= cfg.true_threshold) return Label::True;
  if (*v.frequency <= cfg.false_threshold) return Label::False;
  return Label::Uncertain;
}

inline std::vector<std::string> protocol_lines(const narsese::Program& program,
                                               const EngineConfig& cfg) {
  std::vector<std::string> lines;
  for (const auto& judgment : program.judgments)
    lines.push_back(narsese::serialize(judgment));
  lines.push_back(std::to_string(cfg.pre_query_cycles));
  lines.push_back(narsese::serialize(program.query));
  lines.push_back(std::to_string(cfg.post_query_cycles));
  return lines;
}

namespace detail {

inline std::string_view trim_view(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::optional<double> truth_field(const std::string& line,
                                         const std::string& key) {
  auto pos = line.find(key + "=");
  if (pos == std::string::npos) return std::nullopt;
  const char* start = line.c_str() + pos + key.size() + 1;
  char* end = nullptr;
  double value = std::strtod(start, &end);
  if (end == start) return std::nullopt;
  return value;
}

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) {
    if (cur.back() == '\r') cur.pop_back();
    lines.push_back(std::move(cur));
  }
  return lines;
}

}  // namespace detail

// Scans a transcript for answer lines and keeps the highest-confidence one
// (ties go to the later line). The none-marker and non-answer output are
// skipped; an answer line whose truth annotation will not parse is an error.
inline EngineVerdict parse_transcript(const std::vector<std::string>& lines) {
  EngineVerdict verdict;
  verdict.raw_lines = lines;
  for (const auto& line : lines) {
    auto body = detail::trim_view(line);
    constexpr std::string_view marker = "Answer:";
    if (body.substr(0, marker.size()) != marker) continue;
    auto rest = detail::trim_view(body.substr(marker.size()));
    if (rest == "None") continue;
    auto freq = detail::truth_field(line, "frequency");
    auto conf = detail::truth_field(line, "confidence");
    if (!freq || !conf)
      throw EngineProtocolError("unparseable truth annotation: " + line);
    if (*freq < 0.0 || *freq > 1.0 || *conf < 0.0 || *conf > 1.0)
      throw EngineProtocolError("truth values out of [0,1]: " + line);
    if (!verdict.answered || *conf >= *verdict.confidence) {
      verdict.answered = true;
      verdict.frequency = freq;
      verdict.confidence = conf;
    }
  }
  return verdict;
}

inline EngineVerdict execute(const narsese::Program& program,
                             const EngineConfig& cfg) {
  cfg.validate();
  auto argv = split_command(cfg.executable_path);
  if (argv.empty()) throw EngineSpawnError("empty command");

  auto start = std::chrono::steady_clock::now();
  EngineSession session(argv);
  for (const auto& line : protocol_lines(program, cfg))
    session.write_line(line);
  session.close_stdin();

  std::string output;
  bool clean = session.read_to_end(cfg.timeout, output);
  auto lines = detail::split_lines(output);
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);

  // A kill can truncate output mid-line, so a timed-out transcript is kept
  // for audit but never parsed; the verdict maps to Uncertain.
  if (!clean) {
    EngineVerdict verdict;
    verdict.raw_lines = std::move(lines);
    verdict.timed_out = true;
    verdict.wall_time = elapsed;
    return verdict;
  }
  EngineVerdict verdict = parse_transcript(lines);
  verdict.wall_time = elapsed;
  return verdict;
}

inline EngineVerdict execute_with_mock(const narsese::Program& program,
                                       const std::vector<std::string>& script,
                                       const EngineConfig& cfg = {}) {
  cfg.validate();
  (void)protocol_lines(program, cfg);
  return parse_transcript(script);
}

}  // namespace folnar::engine
