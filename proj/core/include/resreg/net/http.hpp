#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace resreg::net {

struct HttpRequest {
  std::string method = "GET";
  std::string url;  // absolute http(s)
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
  std::string content_type;
  std::chrono::milliseconds timeout{10'000};
  bool follow_redirects = false;  // at most 5 hops when enabled
};

struct HttpResponse {
  int status = 0;
  std::string body;
  std::multimap<std::string, std::string> headers;

  std::optional<std::string> header(std::string_view name) const;
};

/// Performs one request. Throws Error(kBadRequest) for a malformed URL and
/// Error(kTransport) when no response was received; any HTTP status,
/// including 4xx/5xx, is returned rather than thrown.
HttpResponse send(const HttpRequest& request);

/// "k1=v1&k2=v2" with percent-encoding.
std::string form_encode(const std::vector<std::pair<std::string, std::string>>& fields);

}  // namespace resreg::net
