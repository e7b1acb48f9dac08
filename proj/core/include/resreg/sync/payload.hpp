#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "resreg/catalog/types.hpp"

namespace resreg::sync {

/// Dataset metadata in the external catalog's shape.
///
///   english_name   -> name
///   native_name    -> full_name
///   description    -> description
///   HOMEPAGE link  -> url
///   varieties      -> languages (every PT variety is "portuguese", listed once)
struct ExternalDatasetPayload {
  std::string name;
  std::optional<std::string> full_name;
  std::optional<std::string> description;
  std::optional<std::string> url;
  std::vector<std::string> languages;

  bool operator==(const ExternalDatasetPayload&) const = default;
};

void to_json(nlohmann::json& j, const ExternalDatasetPayload& p);
ExternalDatasetPayload payload_from_json(const nlohmann::json& j);

ExternalDatasetPayload to_external_payload(const catalog::Dataset& dataset);

/// SHA-256 over the compact JSON encoding (keys sorted, absent fields omitted).
std::string payload_hash(const ExternalDatasetPayload& payload);

}  // namespace resreg::sync
