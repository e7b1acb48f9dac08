#pragma once

// Canonical serialized form: snake_case keys, uppercase enum tags, absent
// optionals omitted. Shared by the REST API, the store file, seed fixtures
// and the sync payload builder.

#include <nlohmann/json.hpp>

#include "resreg/catalog/types.hpp"

namespace resreg::catalog {

void to_json(nlohmann::json& j, const NlpTask& t);
void to_json(nlohmann::json& j, const ResourceLink& l);
void to_json(nlohmann::json& j, const PreservationRating& r);
void to_json(nlohmann::json& j, const Dataset& d);

// Strict parsers. Every structural problem found is reported together as a
// single Error(kValidation) whose violations name the offending fields.
// Missing required fields parse as empty and are left to validation.
// Unknown keys are ignored.
NlpTask parse_task(const nlohmann::json& j);
Dataset parse_dataset(const nlohmann::json& j);

}  // namespace resreg::catalog
