#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "resreg/catalog/types.hpp"
#include "resreg/rating/rating.hpp"
#include "resreg/service/registry.hpp"

namespace resreg::admin {

/// Registry URL plus bearer token. The token never appears in diagnostics:
/// streaming a session prints it redacted.
class AdminSession {
 public:
  AdminSession(std::string base_url, std::string bearer_token);

  const std::string& base_url() const { return base_url_; }
  const std::string& bearer_token() const { return bearer_token_; }

  /// "AdminSession{url=..., token=<redacted>}".
  std::string describe() const;

 private:
  std::string base_url_;
  std::string bearer_token_;
};

std::ostream& operator<<(std::ostream& os, const AdminSession& session);

/// Authenticated write-side wrappers over the registry REST API.
/// 401/409/422 surface as Error(kAuth/kConflict/kValidation).
class AdminClient {
 public:
  explicit AdminClient(AdminSession session, std::chrono::milliseconds timeout = std::chrono::seconds(30));

  const AdminSession& session() const { return session_; }

  catalog::NlpTask insert_nlp_task(std::string name, std::string acronym,
                                   std::vector<std::string> papers_with_code_ids) const;
  catalog::NlpTask insert_nlp_task(const catalog::NlpTask& task) const;
  catalog::NlpTask update_nlp_task(std::string_view id, const catalog::NlpTask& task) const;
  void delete_nlp_task(std::string_view id) const;
  std::vector<catalog::NlpTask> list_nlp_tasks() const;

  catalog::Dataset insert_dataset(const catalog::Dataset& dataset) const;
  catalog::Dataset update_dataset(std::string_view id, const catalog::Dataset& dataset,
                                  std::optional<std::uint64_t> expected_revision = std::nullopt) const;
  void delete_dataset(std::string_view id, std::optional<std::uint64_t> expected_revision = std::nullopt) const;
  catalog::Dataset get_dataset(std::string_view id) const;
  catalog::Dataset get_dataset_by_name(std::string_view english_name) const;
  std::vector<catalog::Dataset> list_datasets(const service::DatasetFilter& filter = {}) const;

 private:
  AdminSession session_;
  std::chrono::milliseconds timeout_;
};

/// POST /api/tokens. Needs no session: the admin secret is the credential.
service::IssuedToken issue_token(const std::string& base_url, const std::string& label,
                                 const std::string& admin_secret);
void revoke_token(const std::string& base_url, const std::string& token, const std::string& admin_secret);

struct RateOptions {
  bool offline = false;  // use recorded link state, UNPROBED counting as DEAD
  rating::ProbeOptions probe;
  rating::RatingConfig config = rating::RatingConfig::defaults();
};

/// Runs the preservation-rating pipeline locally on a dataset record.
rating::RatingReport rate_dataset(const catalog::Dataset& dataset, const RateOptions& options = {});

}  // namespace resreg::admin
