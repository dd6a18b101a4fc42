#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avar/operator.hpp"

namespace avar {

Operator make_gradient(int d);
Operator make_symmetric_gradient(int d);
Operator make_cauchy_riemann();
Operator make_partial_x_only();  // d = 2, N = k = 2: identity times d/dx1
Operator make_divergence(int d);

// A known truth about a catalog operator together with how it was obtained.
struct ExpectedConstant {
  double value = 0.0;
  std::string provenance;
};

struct CatalogEntry {
  std::string name;
  Operator op;
  bool real_elliptic = false;
  bool complex_elliptic = false;
  std::optional<int> kernel_dimension;  // absent when the nullspace is infinite
  std::optional<bool> cancelling;       // absent when undefined (not R-elliptic)
  std::map<std::string, ExpectedConstant> constants;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);
bool catalog_has(const std::string& name);

}  // namespace avar
