#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "folnar/dataset/instance.hpp"

namespace folnar::dataset {

struct DifficultyCounts {
  std::size_t easy = 0;
  std::size_t medium = 0;
  std::size_t hard = 0;

  std::size_t total() const { return easy + medium + hard; }

  void bump(Difficulty d) {
    switch (d) {
      case Difficulty::Easy: ++easy; break;
      case Difficulty::Medium: ++medium; break;
      case Difficulty::Hard: ++hard; break;
    }
  }

  bool operator==(const DifficultyCounts&) const = default;
};

// Untagged instances count toward the overall row only.
struct SplitStats {
  std::map<std::string, DifficultyCounts> by_split;
  DifficultyCounts overall;
};

inline SplitStats stats(const std::vector<BenchmarkInstance>& instances) {
  SplitStats s;
  for (const auto& inst : instances) {
    s.overall.bump(inst.difficulty);
    if (inst.split) s.by_split[*inst.split].bump(inst.difficulty);
  }
  return s;
}

}  // namespace folnar::dataset
