#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "resreg/util/time.hpp"

namespace resreg::sync {

struct SyncRecord {
  std::string dataset_id;
  std::string endpoint;
  std::string external_id;
  util::Timestamp last_synced_at{};
  std::string payload_hash;

  bool operator==(const SyncRecord&) const = default;
};

/// Local bookkeeping of what has been pushed where. At most one record per
/// (dataset_id, endpoint).
class SyncLedger {
 public:
  SyncLedger() = default;

  /// Empty ledger when the file does not exist yet.
  static SyncLedger load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  const SyncRecord* find(std::string_view dataset_id, std::string_view endpoint) const;

  /// Local dataset that owns `external_id` on `endpoint`, if any.
  std::optional<std::string> owner_of(std::string_view endpoint, std::string_view external_id) const;

  void upsert(SyncRecord record);

  const std::vector<SyncRecord>& records() const { return records_; }

 private:
  std::vector<SyncRecord> records_;
};

}  // namespace resreg::sync
