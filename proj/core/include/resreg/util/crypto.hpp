#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace resreg::util {

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// `bytes` bytes from the OS CSPRNG, base64url-encoded without padding.
std::string random_urlsafe(std::size_t bytes);

/// `bytes` bytes from the OS CSPRNG as lowercase hex.
std::string random_hex(std::size_t bytes);

}  // namespace resreg::util
