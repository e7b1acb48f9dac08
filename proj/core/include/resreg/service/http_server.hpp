#pragma once

#include <memory>
#include <string>

#include "resreg/service/registry.hpp"

namespace resreg::service {

/// REST front end over a Registry.
///
///   POST   /api/tokens                    {label, admin_secret}
///   POST   /api/tokens/revoke             {token, admin_secret}
///   GET    /api/status
///   GET    /api/nlp-tasks                 POST /api/nlp-tasks
///   GET    /api/nlp-tasks/{id}            PUT|DELETE /api/nlp-tasks/{id}
///   GET    /api/datasets?task=&variety=&policy=
///   POST   /api/datasets
///   GET    /api/datasets/by-name/{english_name}
///   GET    /api/datasets/{id}             PUT|DELETE /api/datasets/{id}
///
/// Mutations need `Authorization: Bearer <token>`; PUT/DELETE on datasets
/// honour `X-Expected-Revision`. Every response carries `X-Store-Revision`.
/// Errors are {"error": kind, "message": ..., "violations": [{field, message}]}.
class HttpServer {
 public:
  explicit HttpServer(Registry& registry);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the listening socket; port 0 picks a free one. Returns the bound port.
  int bind(const std::string& host, int port);

  /// Serves on the calling thread until stop().
  void serve();

  /// bind() + serve() on a background thread; returns once accepting.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  void stop();

  std::string base_url() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace resreg::service
