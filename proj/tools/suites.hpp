#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qsl::cli {

struct Check {
  std::string name;
  double value;      // the measured margin or extremum
  double threshold;  // value must be >= threshold (or <= when upper_bound)
  bool upper_bound;
  bool passed;
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;

  bool passed() const;
};

inline const std::vector<std::string> kSuiteNames{"forbidden", "derivative",  "convexity",
                                                  "subadditivity", "mixture", "composite"};

/// Runs one named suite on instances drawn from `seed`. Throws
/// std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

}  // namespace qsl::cli
