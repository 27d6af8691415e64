#ifndef RKM_SUITE_HPP
#define RKM_SUITE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rkm/eval.hpp"

namespace rkm {

// Benchmark suite files are INI-like:
//
//   trials = 30            # top-level keys are defaults for every section
//   runs_per_trial = 5
//   seed = 1
//   data_dir = ../data/fcps
//
//   [atom]
//   file = atom.csv
//   mode = merge           # kmeans | merge | tiled
//   k = 20
//
// Tiled sections use `pct` and `splits = 2,2`. Relative paths resolve
// against the suite file's directory.

struct SuiteEntry {
  std::string name;
  std::filesystem::path file;
  int label_column = -1;
  PipelineSpec spec;
  int trials = 100;
  int runs_per_trial = 5;
  std::uint64_t seed = 0;
};

/// Throws ParseError with the offending line on malformed input.
std::vector<SuiteEntry> parse_suite(const std::filesystem::path& path);

std::vector<SuiteEntry> parse_suite(const std::string& text, const std::filesystem::path& base_dir,
                                    const std::string& origin = "<suite>");

}  // namespace rkm

#endif  // RKM_SUITE_HPP
