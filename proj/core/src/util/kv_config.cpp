#include "resreg/util/kv_config.hpp"

#include "resreg/error.hpp"
#include "resreg/util/atomic_file.hpp"
#include "resreg/util/strings.hpp"

namespace resreg::util {

namespace {

// Reads one scalar starting at `pos`; quoted strings honour \" and \\.
std::string read_scalar(std::string_view text, std::size_t& pos, std::string_view terminators,
                        int line_no) {
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  if (pos < text.size() && text[pos] == '"') {
    ++pos;
    std::string out;
    while (pos < text.size() && text[pos] != '"') {
      if (text[pos] == '\\' && pos + 1 < text.size()) ++pos;
      out.push_back(text[pos++]);
    }
    if (pos >= text.size()) {
      throw Error(ErrorKind::kBadRequest, "config line " + std::to_string(line_no) + ": unterminated string");
    }
    ++pos;
    return out;
  }
  const auto start = pos;
  while (pos < text.size() && terminators.find(text[pos]) == std::string_view::npos && text[pos] != '#') {
    ++pos;
  }
  return trim(text.substr(start, pos - start));
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
  KeyValueConfig cfg;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    if (stripped.front() == '[') continue;  // table headers are ignored, keys stay flat

    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::kBadRequest, "config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    std::string_view rhs = std::string_view(stripped).substr(eq + 1);
    std::size_t pos = 0;
    while (pos < rhs.size() && (rhs[pos] == ' ' || rhs[pos] == '\t')) ++pos;

    Value value;
    if (pos < rhs.size() && rhs[pos] == '[') {
      value.is_list = true;
      ++pos;
      while (true) {
        while (pos < rhs.size() && (rhs[pos] == ' ' || rhs[pos] == '\t')) ++pos;
        if (pos >= rhs.size()) {
          throw Error(ErrorKind::kBadRequest, "config line " + std::to_string(line_no) + ": unterminated list");
        }
        if (rhs[pos] == ']') break;
        const auto before = pos;
        std::string item = read_scalar(rhs, pos, ",]", line_no);
        if (pos == before && rhs[pos] != ',') {
          throw Error(ErrorKind::kBadRequest, "config line " + std::to_string(line_no) + ": malformed list");
        }
        if (!item.empty()) value.items.push_back(std::move(item));
        while (pos < rhs.size() && (rhs[pos] == ' ' || rhs[pos] == '\t')) ++pos;
        if (pos < rhs.size() && rhs[pos] == ',') ++pos;
      }
    } else {
      value.items.push_back(read_scalar(rhs, pos, "", line_no));
    }
    cfg.values_[key] = std::move(value);
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  auto text = read_file_if_exists(path);
  if (!text) throw Error(ErrorKind::kIo, "config file not found: " + path.string());
  return parse(*text);
}

std::optional<std::string> KeyValueConfig::get(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end() || it->second.is_list || it->second.items.empty()) return std::nullopt;
  return it->second.items.front();
}

std::optional<std::vector<std::string>> KeyValueConfig::get_list(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second.items;
}

bool KeyValueConfig::contains(std::string_view key) const { return values_.find(key) != values_.end(); }

}  // namespace resreg::util
