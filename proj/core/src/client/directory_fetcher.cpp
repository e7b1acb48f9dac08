#include <cctype>

#include "resreg/client/hub_fetcher.hpp"
#include "resreg/error.hpp"
#include "resreg/util/atomic_file.hpp"

namespace resreg::client {

std::string DirectoryFetcher::file_key(std::string_view locator) {
  if (const auto sep = locator.find("://"); sep != std::string_view::npos) locator.remove_prefix(sep + 3);
  while (!locator.empty() && locator.back() == '/') locator.remove_suffix(1);
  std::string key;
  key.reserve(locator.size());
  for (unsigned char c : locator) {
    key.push_back(std::isalnum(c) || c == '.' || c == '_' || c == '-' ? static_cast<char>(c) : '_');
  }
  return key;
}

Table DirectoryFetcher::fetch(const std::string& locator) const {
  const auto key = file_key(locator);
  if (key.empty() || key == "." || key == "..") throw Error(ErrorKind::kNotFound, "empty locator");
  if (auto text = util::read_file_if_exists(root_ / (key + ".json"))) {
    try {
      return table_from_json(nlohmann::json::parse(*text));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kProtocol, key + ".json: " + e.what());
    }
  }
  if (auto text = util::read_file_if_exists(root_ / (key + ".csv"))) return parse_csv_table(*text);
  throw Error(ErrorKind::kNotFound, "no hosted copy for locator " + locator);
}

Table parse_csv_table(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    if (!(row.size() == 1 && row.front().empty())) rows.push_back(std::move(row));
    row.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_row();
    } else if (c == '\r') {
      // swallowed; LF ends the row
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (quoted) throw Error(ErrorKind::kProtocol, "unterminated quoted CSV field");
  if (field_started || !field.empty() || !row.empty()) end_row();

  Table table;
  if (rows.empty()) return table;
  const auto& header = rows.front();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size()) {
      throw Error(ErrorKind::kProtocol, "CSV row " + std::to_string(r) + " has " +
                                            std::to_string(rows[r].size()) + " cells, header has " +
                                            std::to_string(header.size()));
    }
    Record record;
    for (std::size_t c = 0; c < header.size(); ++c) record[header[c]] = rows[r][c];
    table.push_back(std::move(record));
  }
  return table;
}

}  // namespace resreg::client
