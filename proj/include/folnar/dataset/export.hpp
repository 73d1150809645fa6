#pragma once

// Classification export for supervised-training consumers: one JSON record
// per instance with the gold label folded to a letter (A true, B false,
// C uncertain).

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "folnar/dataset/instance.hpp"
#include "folnar/label.hpp"

namespace folnar::dataset {

inline void export_classification(
    const std::vector<BenchmarkInstance>& instances, std::ostream& out) {
  for (const auto& inst : instances) {
    nlohmann::ordered_json record;
    record["context_nl"] = inst.context_nl;
    record["claim_nl"] = inst.claim_nl;
    record["label"] = std::string(1, to_letter(inst.gold_label));
    out << record.dump() << '\n';
  }
}

inline void export_classification(
    const std::vector<BenchmarkInstance>& instances, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError(0, "", "cannot open '" + path + "' for writing");
  export_classification(instances, out);
}

}  // namespace folnar::dataset
