#pragma once

#include <string>
#include <string_view>

namespace resreg::util {

/// ASCII case folding; catalog keys are compared through this.
std::string casefold(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
std::string trim(std::string_view s);
bool starts_with_icase(std::string_view s, std::string_view prefix);

/// Percent-encodes everything outside the RFC 3986 unreserved set.
std::string url_encode(std::string_view s);

}  // namespace resreg::util
