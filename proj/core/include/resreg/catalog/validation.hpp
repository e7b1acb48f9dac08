#pragma once

#include <set>
#include <string>
#include <vector>

#include "resreg/catalog/types.hpp"
#include "resreg/error.hpp"

namespace resreg::catalog {

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool operator==(const ValidationResult&) const = default;
};

/// Checks every record-level Dataset invariant and reports all violations.
/// Name uniqueness is a store-level property and is not checked here.
ValidationResult validate_dataset(const Dataset& candidate, const std::set<std::string>& known_task_ids);

ValidationResult validate_task(const NlpTask& candidate);

/// True when `license` looks like an SPDX-style identifier.
bool is_spdx_like(std::string_view license);

}  // namespace resreg::catalog
