#pragma once

#include <filesystem>
#include <string>

#include "resreg/client/table.hpp"

namespace resreg::client {

/// Retrieves the rows of a hosted copy. Implementations signal failure by
/// throwing; the client downgrades any failure to a metadata-only result.
class HubFetcher {
 public:
  virtual ~HubFetcher() = default;
  virtual Table fetch(const std::string& locator) const = 0;
};

/// Serves locators from a local directory, one file per locator.
///
/// The file key is the locator without its scheme, every character outside
/// [A-Za-z0-9._-] replaced by '_':
///   https://huggingface.co/datasets/org/ner  ->  huggingface.co_datasets_org_ner
/// `<key>.json` (array of flat objects) is tried first, then `<key>.csv`
/// (header row; every cell is a string).
class DirectoryFetcher final : public HubFetcher {
 public:
  explicit DirectoryFetcher(std::filesystem::path root) : root_(std::move(root)) {}

  Table fetch(const std::string& locator) const override;

  static std::string file_key(std::string_view locator);

 private:
  std::filesystem::path root_;
};

/// RFC 4180-style CSV: quoted fields, doubled quotes, CRLF or LF rows.
Table parse_csv_table(std::string_view text);

}  // namespace resreg::client
