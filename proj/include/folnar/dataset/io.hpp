#pragma once

// JSON Lines reader/writer for benchmark instances. Canonical field order on
// write keeps saved files byte-stable; unknown fields ride along after the
// known ones in their original order.

#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "folnar/dataset/instance.hpp"
#include "folnar/narsese/parse.hpp"

namespace folnar::dataset {

namespace detail {

using json = nlohmann::ordered_json;

inline const json& require_field(const json& record, const std::string& key,
                                 std::size_t line) {
  auto it = record.find(key);
  if (it == record.end())
    throw SchemaError(line, key, "missing required field");
  return *it;
}

inline std::string string_field(const json& record, const std::string& key,
                                std::size_t line) {
  const json& v = require_field(record, key, line);
  if (!v.is_string()) throw SchemaError(line, key, "expected a string");
  return v.get<std::string>();
}

inline std::vector<std::string> string_list_field(const json& v,
                                                  const std::string& key,
                                                  std::size_t line) {
  if (!v.is_array()) throw SchemaError(line, key, "expected a string array");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string())
      throw SchemaError(line, key, "expected a string array");
    out.push_back(item.get<std::string>());
  }
  return out;
}

inline bool known_key(const std::string& key) {
  static const char* keys[] = {
      "id",          "split",        "difficulty",      "steps",
      "context_nl",  "claim_nl",     "fol_premises",    "fol_conclusion",
      "gold_label",  "narsese_program", "narsese_query"};
  for (const char* k : keys)
    if (key == k) return true;
  return false;
}

}  // namespace detail

inline BenchmarkInstance instance_from_json(const detail::json& record,
                                            std::size_t line) {
  if (!record.is_object())
    throw SchemaError(line, "", "record is not a JSON object");
  BenchmarkInstance inst;
  inst.id = detail::string_field(record, "id", line);
  inst.context_nl = detail::string_field(record, "context_nl", line);
  inst.claim_nl = detail::string_field(record, "claim_nl", line);
  inst.fol_conclusion = detail::string_field(record, "fol_conclusion", line);

  const auto& steps = detail::require_field(record, "steps", line);
  if (!steps.is_number_integer())
    throw SchemaError(line, "steps", "expected an integer");
  inst.steps = steps.get<int>();

  try {
    inst.difficulty = difficulty_from_string(
        detail::string_field(record, "difficulty", line));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(line, "difficulty", e.what());
  }
  try {
    if (difficulty_band(inst.steps) != inst.difficulty)
      throw SchemaError(line, "difficulty",
                        "band mismatch: " + std::to_string(inst.steps) +
                            " steps is " +
                            to_string(difficulty_band(inst.steps)));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(line, "steps", e.what());
  }

  inst.fol_premises = detail::string_list_field(
      detail::require_field(record, "fol_premises", line), "fol_premises",
      line);

  try {
    inst.gold_label =
        label_from_string(detail::string_field(record, "gold_label", line));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(line, "gold_label", e.what());
  }

  if (auto it = record.find("split"); it != record.end()) {
    if (!it->is_string()) throw SchemaError(line, "split", "expected a string");
    inst.split = it->get<std::string>();
  }
  if (auto it = record.find("narsese_program"); it != record.end()) {
    auto lines = detail::string_list_field(*it, "narsese_program", line);
    for (const auto& sentence : lines) {
      try {
        narsese::parse_narsese(sentence);
      } catch (const narsese::NarseseSyntaxError& e) {
        throw SchemaError(line, "narsese_program",
                          std::string("unparseable line '") + sentence +
                              "': " + e.what());
      }
    }
    inst.narsese_program = std::move(lines);
  }
  if (auto it = record.find("narsese_query"); it != record.end()) {
    if (!it->is_string())
      throw SchemaError(line, "narsese_query", "expected a string");
    try {
      narsese::parse_narsese(it->get<std::string>());
    } catch (const narsese::NarseseSyntaxError& e) {
      throw SchemaError(line, "narsese_query", e.what());
    }
    inst.narsese_query = it->get<std::string>();
  }

  for (auto it = record.begin(); it != record.end(); ++it)
    if (!detail::known_key(it.key())) inst.extras[it.key()] = it.value();
  return inst;
}

inline detail::json instance_to_json(const BenchmarkInstance& inst) {
  detail::json record = detail::json::object();
  record["id"] = inst.id;
  if (inst.split) record["split"] = *inst.split;
  record["difficulty"] = to_string(inst.difficulty);
  record["steps"] = inst.steps;
  record["context_nl"] = inst.context_nl;
  record["claim_nl"] = inst.claim_nl;
  record["fol_premises"] = inst.fol_premises;
  record["fol_conclusion"] = inst.fol_conclusion;
  record["gold_label"] = to_string(inst.gold_label);
  if (inst.narsese_program) record["narsese_program"] = *inst.narsese_program;
  if (inst.narsese_query) record["narsese_query"] = *inst.narsese_query;
  for (auto it = inst.extras.begin(); it != inst.extras.end(); ++it)
    record[it.key()] = it.value();
  return record;
}

inline std::vector<BenchmarkInstance> load_instances(std::istream& in) {
  std::vector<BenchmarkInstance> instances;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    detail::json record;
    try {
      record = detail::json::parse(line);
    } catch (const detail::json::parse_error& e) {
      throw SchemaError(line_no, "", std::string("invalid JSON: ") + e.what());
    }
    instances.push_back(instance_from_json(record, line_no));
  }
  return instances;
}

inline std::vector<BenchmarkInstance> load_instances(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(0, "", "cannot open '" + path + "'");
  return load_instances(in);
}

inline void save_instances(const std::vector<BenchmarkInstance>& instances,
                           std::ostream& out) {
  for (const auto& inst : instances)
    out << instance_to_json(inst).dump() << '\n';
}

inline void save_instances(const std::vector<BenchmarkInstance>& instances,
                           const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError(0, "", "cannot open '" + path + "' for writing");
  save_instances(instances, out);
}

}  // namespace folnar::dataset
