#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "resreg/sync/payload.hpp"

namespace resreg::sync {

struct ExternalCredentials {
  std::string username;
  std::string password;

  /// Throws Error(kDomain) unless both are non-empty.
  void validate() const;
  /// Username only; the password is never printed.
  std::string describe() const;
};

struct RemoteDataset {
  std::string id;  // external slug
  ExternalDatasetPayload payload;
};

/// The operations sync needs from an external research catalog. The bundled
/// HTTP client speaks the minimal protocol of FakePwcServer; a client for a
/// real site implements the same interface.
class ExternalCatalog {
 public:
  virtual ~ExternalCatalog() = default;

  /// Identifies the remote catalog in the sync ledger.
  virtual const std::string& endpoint() const = 0;

  virtual std::vector<RemoteDataset> find_by_name(const std::string& name) = 0;
  virtual RemoteDataset create(const ExternalDatasetPayload& payload) = 0;
  /// Error(kNotFound) when the slug no longer exists remotely.
  virtual RemoteDataset update(const std::string& external_id, const ExternalDatasetPayload& payload) = 0;
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{200};
  double multiplier = 2.0;
};

/// Runs `op`, retrying only on Error(kTransport) with exponential backoff.
template <typename Op>
auto with_retry(const RetryPolicy& policy, Op&& op,
                const std::function<void(std::chrono::milliseconds)>& sleep = {}) -> decltype(op());

/// Papers-With-Code-style HTTP client:
///
///   POST  /login                form username, password -> Set-Cookie session
///   GET   /api/datasets?name=   -> [{id, name, ...}]
///   POST  /api/datasets         JSON payload -> 201 {id, ...}
///   PATCH /api/datasets/{id}    JSON payload -> 200 {id, ...}
///
/// 400/422 answers become Error(kValidation) carrying the remote message.
class PwcHttpClient final : public ExternalCatalog {
 public:
  /// Logs in immediately; the session cookie is reused for every later call.
  /// Bad credentials -> Error(kAuth); unreachable -> Error(kTransport) once
  /// the retry budget is spent.
  static PwcHttpClient login(const ExternalCredentials& credentials, std::string endpoint,
                             RetryPolicy retry = {},
                             std::chrono::milliseconds timeout = std::chrono::seconds(10));

  const std::string& endpoint() const override { return endpoint_; }
  std::vector<RemoteDataset> find_by_name(const std::string& name) override;
  RemoteDataset create(const ExternalDatasetPayload& payload) override;
  RemoteDataset update(const std::string& external_id, const ExternalDatasetPayload& payload) override;

 private:
  PwcHttpClient(std::string endpoint, std::string cookie, RetryPolicy retry, std::chrono::milliseconds timeout);

  std::string endpoint_;
  std::string cookie_;
  RetryPolicy retry_;
  std::chrono::milliseconds timeout_;
};

}  // namespace resreg::sync

#include "resreg/sync/detail/retry.ipp"
