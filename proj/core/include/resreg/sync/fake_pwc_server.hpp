#pragma once

#include <memory>
#include <string>
#include <vector>

#include "resreg/sync/external_catalog.hpp"

namespace resreg::sync {

struct RecordedCall {
  std::string method;
  std::string path;  // without query string
  int status = 0;

  bool is_write() const { return method == "POST" || method == "PATCH" || method == "PUT" || method == "DELETE"; }
};

/// In-process stand-in for the external catalog, for hermetic tests.
///
/// Serves the PwcHttpClient protocol plus GET /debug/calls, which returns the
/// call log as [{method, path, status}]. Rejects payloads with an empty name
/// or a non-http(s) url with 400 {"error": ...}; a POST whose name already
/// exists is 409.
class FakePwcServer {
 public:
  FakePwcServer(std::string username, std::string password);
  ~FakePwcServer();

  FakePwcServer(const FakePwcServer&) = delete;
  FakePwcServer& operator=(const FakePwcServer&) = delete;

  /// Serves on a background thread; port 0 picks a free one.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  /// Serves on the calling thread until stop().
  void run(const std::string& host, int port);
  void stop();

  std::string url() const;

  std::vector<RecordedCall> calls() const;
  std::vector<RemoteDataset> datasets() const;
  void clear_calls();

  /// Seeds a remote record directly, bypassing the call log.
  RemoteDataset put(const ExternalDatasetPayload& payload);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace resreg::sync
