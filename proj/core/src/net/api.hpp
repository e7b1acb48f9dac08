#pragma once

#include <string_view>

#include <nlohmann/json.hpp>

#include "resreg/net/http.hpp"

namespace resreg::net {

/// Turns a registry error response into the matching Error, carrying any
/// violations the server listed.
[[noreturn]] void throw_for_status(const HttpResponse& res, std::string_view context);

/// Parses a JSON body, throwing Error(kProtocol) when it is not JSON.
nlohmann::json json_body(const HttpResponse& res, std::string_view context);

}  // namespace resreg::net
