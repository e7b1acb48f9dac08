#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace resreg::util {

struct Url {
  std::string scheme;  // lowercased, "http" or "https"
  std::string host;    // lowercased
  int port = 0;        // explicit or scheme default
  std::string target;  // path plus query, at least "/"

  /// "scheme://host:port", the form the HTTP client wants.
  std::string origin() const;
};

/// Parses an absolute http(s) URL. Anything else is nullopt.
std::optional<Url> parse_http_url(std::string_view text);

}  // namespace resreg::util
