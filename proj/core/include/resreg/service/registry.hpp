#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "resreg/catalog/types.hpp"
#include "resreg/rating/probe.hpp"
#include "resreg/rating/rating.hpp"
#include "resreg/util/time.hpp"

namespace resreg::service {

/// A bearer credential as the store keeps it: only the SHA-256 of the token.
struct ApiToken {
  std::string token_sha256;
  std::string label;
  util::Timestamp issued_at{};
  bool revoked = false;

  bool operator==(const ApiToken&) const = default;
};

/// The plaintext token, handed out exactly once at issue time.
struct IssuedToken {
  std::string token;
  std::string label;
  util::Timestamp issued_at{};
};

inline constexpr std::size_t kTokenBytes = 32;  // 256 bits -> 43 URL-safe chars

struct StoreSnapshot {
  std::vector<catalog::Dataset> datasets;
  std::vector<catalog::NlpTask> tasks;
  std::vector<ApiToken> tokens;
  std::uint64_t revision = 0;

  bool operator==(const StoreSnapshot&) const = default;

  const catalog::Dataset* find_dataset(std::string_view id) const;
  const catalog::NlpTask* find_task(std::string_view id) const;
};

nlohmann::json to_json(const StoreSnapshot& snapshot, bool include_tokens = true);
StoreSnapshot parse_snapshot(const nlohmann::json& j);

/// Loads a seed fixture file: a snapshot document without tokens.
StoreSnapshot load_fixture(const std::filesystem::path& path);

struct DatasetFilter {
  std::optional<std::string> task;  // task name, case-insensitive
  std::optional<catalog::LanguageVariety> variety;
  std::optional<catalog::StoragePolicy> policy;
};

/// Datasets matching every supplied filter, ordered by case-folded english_name.
std::vector<catalog::Dataset> filter_datasets(const StoreSnapshot& snapshot, const DatasetFilter& filter);

struct RegistryOptions {
  /// Empty path keeps the store in memory only.
  std::filesystem::path store_path;
  std::string admin_secret;
  /// Used to rate datasets submitted without a rating. Defaults to RecordedStateProber.
  std::shared_ptr<const rating::LinkProber> prober;
  rating::RatingConfig rating_config = rating::RatingConfig::defaults();
  std::function<util::Timestamp()> clock = util::now_utc;
};

/// The catalog store behind the REST API.
///
/// Mutations are serialized through one writer: each builds the next
/// snapshot, persists it atomically, then publishes it. Readers take the
/// last published snapshot without blocking writers. A mutation that fails
/// to persist is not committed.
class Registry {
 public:
  explicit Registry(RegistryOptions options);

  Registry(const Registry&) = delete;
  Registry& operator=(const Registry&) = delete;

  std::shared_ptr<const StoreSnapshot> snapshot() const;
  std::uint64_t revision() const { return snapshot()->revision; }

  /// Installs a fixture into an empty store (revision 0) as one commit.
  /// Returns false, leaving the store untouched, when it already has state.
  bool apply_seed(StoreSnapshot fixture);

  IssuedToken issue_token(std::string_view label, std::string_view admin_secret);
  void revoke_token(std::string_view token, std::string_view admin_secret);

  /// Throws Error(kAuth) unless `bearer` is a known, unrevoked token.
  void authorize(std::string_view bearer) const;

  std::vector<catalog::NlpTask> list_tasks() const;
  catalog::NlpTask get_task(std::string_view id) const;
  catalog::NlpTask create_task(catalog::NlpTask task, std::string_view bearer);
  catalog::NlpTask update_task(std::string_view id, catalog::NlpTask task, std::string_view bearer);
  void delete_task(std::string_view id, std::string_view bearer);

  std::vector<catalog::Dataset> list_datasets(const DatasetFilter& filter = {}) const;
  catalog::Dataset get_dataset(std::string_view id) const;
  catalog::Dataset get_dataset_by_name(std::string_view english_name) const;
  catalog::Dataset create_dataset(catalog::Dataset dataset, std::string_view bearer);
  catalog::Dataset update_dataset(std::string_view id, catalog::Dataset dataset, std::string_view bearer,
                                  std::optional<std::uint64_t> expected_revision = std::nullopt);
  void delete_dataset(std::string_view id, std::string_view bearer,
                      std::optional<std::uint64_t> expected_revision = std::nullopt);

  /// Fills in the rating and policy the way create/update do: a SUBMITTED
  /// rating is kept, anything else is predicted afresh; the policy is
  /// always derived. Does not touch the store.
  catalog::Dataset with_rating(catalog::Dataset dataset) const;

 private:
  template <typename Mutation>
  void commit(Mutation&& mutate);
  void persist(const StoreSnapshot& next) const;
  void publish(std::shared_ptr<const StoreSnapshot> next);
  bool check_admin_secret(std::string_view secret) const;

  RegistryOptions options_;
  mutable std::mutex read_mu_;  // guards current_ only
  std::shared_ptr<const StoreSnapshot> current_;
  std::mutex write_mu_;
};

}  // namespace resreg::service
