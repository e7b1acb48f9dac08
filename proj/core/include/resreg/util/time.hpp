#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace resreg::util {

using Clock = std::chrono::system_clock;
using Timestamp = std::chrono::sys_seconds;

Timestamp now_utc();

/// RFC 3339 / ISO 8601 in UTC, e.g. "2024-03-01T12:00:00Z".
std::string format_utc(Timestamp t);
std::optional<Timestamp> parse_utc(std::string_view text);

int year_of(Timestamp t);

}  // namespace resreg::util
