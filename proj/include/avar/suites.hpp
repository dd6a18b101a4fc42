#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "avar/serialization.hpp"

namespace avar {

struct CriterionResult {
  std::string name;
  bool passed = false;
  Json measured;  // values behind the verdict
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;
  bool passed = false;
};

// The four named batteries: catalog (ellipticity verdicts, kernel
// dimensions, cancelling flags), convergence (Poincare constants against
// analytic values), scaling (trace constant on balls linear in the radius),
// sobolev (trace-style Sobolev ratios, dilation invariance, cancelling).
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

Json suite_to_json(const SuiteReport& report);

}  // namespace avar
