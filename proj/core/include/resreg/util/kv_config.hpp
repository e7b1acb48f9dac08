#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace resreg::util {

/// A flat TOML-style key/value file:
///
///   # comment
///   url = "http://localhost:8080"
///   open_licenses = ["MIT", "CC-BY*"]
///   timeout_seconds = 5
///
/// Tables, multi-line values, and escapes other than \" and \\ are not supported.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::string_view text);
  static KeyValueConfig load(const std::filesystem::path& path);

  std::optional<std::string> get(std::string_view key) const;
  std::optional<std::vector<std::string>> get_list(std::string_view key) const;
  bool contains(std::string_view key) const;

 private:
  struct Value {
    std::vector<std::string> items;
    bool is_list = false;
  };
  std::map<std::string, Value, std::less<>> values_;
};

}  // namespace resreg::util
