#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "resreg/catalog/types.hpp"
#include "resreg/client/hub_fetcher.hpp"
#include "resreg/client/table.hpp"

namespace resreg::client {

enum class FallbackReason { kNoHostedCopy, kFetchFailed };
std::string_view to_string(FallbackReason reason);

struct Materialized {
  catalog::Dataset metadata;
  Table rows;
  std::string source_locator;
};

struct MetadataOnly {
  catalog::Dataset metadata;
  FallbackReason reason = FallbackReason::kNoHostedCopy;
  std::string detail;  // fetch error text, empty for kNoHostedCopy
};

using LoadResult = std::variant<Materialized, MetadataOnly>;

const catalog::Dataset& metadata_of(const LoadResult& result);

inline constexpr const char* kRegistryUrlEnv = "RESREG_URL";

/// Read-side client of the registry. Immutable after construction.
///
/// Errors: Error(kTransport) when the registry cannot be reached (message
/// names the endpoint), Error(kNotFound) for unknown names, Error(kProtocol)
/// for any other non-success status.
class RegistryClient {
 public:
  explicit RegistryClient(std::string base_url, std::chrono::milliseconds timeout = std::chrono::seconds(10));

  /// Base URL from $RESREG_URL, falling back to http://127.0.0.1:8080.
  static RegistryClient from_environment();

  const std::string& base_url() const { return base_url_; }

  std::vector<catalog::Dataset> all_datasets(const std::optional<std::string>& nlp_task = std::nullopt) const;
  std::vector<catalog::NlpTask> all_tasks() const;
  catalog::Dataset dataset_by_name(std::string_view english_name) const;

  /// The hosted copy's rows when it can be fetched, the metadata otherwise.
  /// Fetcher failures never propagate.
  LoadResult load_dataset(std::string_view english_name, const HubFetcher& fetcher) const;

 private:
  std::string base_url_;
  std::chrono::milliseconds timeout_;
};

}  // namespace resreg::client
