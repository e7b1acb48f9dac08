#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace resreg::util {

/// Replaces `path` with `contents` so that readers observe either the old or
/// the new file, never a torn one: write a sibling temp file, fsync it,
/// rename over the target, fsync the directory. Throws Error(kIo).
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// nullopt when the file does not exist. Throws Error(kIo) on other failures.
std::optional<std::string> read_file_if_exists(const std::filesystem::path& path);

}  // namespace resreg::util
