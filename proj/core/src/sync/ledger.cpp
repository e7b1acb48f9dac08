#include "resreg/sync/ledger.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "resreg/error.hpp"
#include "resreg/util/atomic_file.hpp"

namespace resreg::sync {

using nlohmann::json;

SyncLedger SyncLedger::load(const std::filesystem::path& path) {
  SyncLedger ledger;
  const auto text = util::read_file_if_exists(path);
  if (!text || text->empty()) return ledger;
  try {
    const auto j = json::parse(*text);
    for (const auto& r : j.at("records")) {
      SyncRecord rec;
      rec.dataset_id = r.at("dataset_id").get<std::string>();
      rec.endpoint = r.at("endpoint").get<std::string>();
      rec.external_id = r.at("external_id").get<std::string>();
      rec.payload_hash = r.at("payload_hash").get<std::string>();
      if (auto ts = util::parse_utc(r.value("last_synced_at", ""))) rec.last_synced_at = *ts;
      ledger.upsert(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kIo, "corrupt sync ledger " + path.string() + ": " + e.what());
  }
  return ledger;
}

void SyncLedger::save(const std::filesystem::path& path) const {
  auto records = json::array();
  for (const auto& r : records_) {
    records.push_back({{"dataset_id", r.dataset_id},
                       {"endpoint", r.endpoint},
                       {"external_id", r.external_id},
                       {"last_synced_at", util::format_utc(r.last_synced_at)},
                       {"payload_hash", r.payload_hash}});
  }
  util::write_file_atomic(path, json{{"records", std::move(records)}}.dump(2) + "\n");
}

const SyncRecord* SyncLedger::find(std::string_view dataset_id, std::string_view endpoint) const {
  const auto it = std::find_if(records_.begin(), records_.end(), [&](const SyncRecord& r) {
    return r.dataset_id == dataset_id && r.endpoint == endpoint;
  });
  return it == records_.end() ? nullptr : &*it;
}

std::optional<std::string> SyncLedger::owner_of(std::string_view endpoint, std::string_view external_id) const {
  for (const auto& r : records_) {
    if (r.endpoint == endpoint && r.external_id == external_id) return r.dataset_id;
  }
  return std::nullopt;
}

void SyncLedger::upsert(SyncRecord record) {
  const auto it = std::find_if(records_.begin(), records_.end(), [&](const SyncRecord& r) {
    return r.dataset_id == record.dataset_id && r.endpoint == record.endpoint;
  });
  if (it != records_.end()) {
    *it = std::move(record);
  } else {
    records_.push_back(std::move(record));
  }
}

}  // namespace resreg::sync
