#pragma once

// The acceptance battery: thirteen criteria, each reduced to one record.

#include <cstdint>
#include <string>
#include <vector>

#include "ginv/report.hpp"

namespace ginv {

struct SuiteOptions {
  std::uint64_t seed = 0;
  ToleranceConfig tol;
};

struct CriterionInfo {
  int id;
  std::string name;
  std::string anchor;
};

const std::vector<CriterionInfo>& acceptance_criteria();

// Library errors inside a criterion become a failing record.
CheckRecord run_criterion(int id, const SuiteOptions& opts);

ExperimentReport run_acceptance_suite(const SuiteOptions& opts);

}  // namespace ginv
