#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "circmap/census.hpp"

namespace circmap {

struct VerifyOptions {
  int n_min = 3;  // table1 range
  int n_max = 8;
  CensusOptions census;
  std::uint64_t seed = 1234;
};

struct VerifyReport {
  std::string suite;
  bool passed = false;
  std::vector<std::string> lines;
};

// table1, closed-forms, periodicity, inverse, lines.
const std::vector<std::string_view>& suite_names();

// Throws InvalidInput for an unknown suite name.
VerifyReport run_suite(std::string_view name, const VerifyOptions& opts = {});

}  // namespace circmap
