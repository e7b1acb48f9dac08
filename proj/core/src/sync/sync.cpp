#include "resreg/sync/sync.hpp"

#include "resreg/error.hpp"

namespace resreg::sync {

std::string_view to_string(SyncAction action) {
  switch (action) {
    case SyncAction::kCreated: return "created";
    case SyncAction::kAdopted: return "adopted";
    case SyncAction::kUpdated: return "updated";
    case SyncAction::kUnchanged: return "unchanged";
  }
  return "?";
}

SyncOutcome sync_insert(ExternalCatalog& remote, const catalog::Dataset& dataset, SyncLedger& ledger,
                        util::Timestamp now) {
  const auto payload = to_external_payload(dataset);
  const auto hash = payload_hash(payload);
  const auto& endpoint = remote.endpoint();

  auto record = [&](const std::string& external_id) {
    ledger.upsert(SyncRecord{dataset.id, endpoint, external_id, now, hash});
  };

  if (const auto* existing = ledger.find(dataset.id, endpoint)) {
    if (existing->payload_hash == hash) return {existing->external_id, SyncAction::kUnchanged};
    const auto external_id = existing->external_id;
    try {
      remote.update(external_id, payload);
      record(external_id);
      return {external_id, SyncAction::kUpdated};
    } catch (const Error& e) {
      // The remote record vanished; fall through and reconcile by name.
      if (e.kind() != ErrorKind::kNotFound) throw;
    }
  }

  const auto matches = remote.find_by_name(payload.name);
  if (matches.size() > 1) {
    throw Error(ErrorKind::kConflict, "remote catalog has " + std::to_string(matches.size()) +
                                          " datasets named '" + payload.name + "'");
  }
  if (matches.size() == 1) {
    const auto& match = matches.front();
    if (auto owner = ledger.owner_of(endpoint, match.id); owner && *owner != dataset.id) {
      throw Error(ErrorKind::kConflict,
                  "remote dataset '" + match.id + "' already belongs to local dataset " + *owner);
    }
    if (match.payload != payload) remote.update(match.id, payload);
    record(match.id);
    return {match.id, SyncAction::kAdopted};
  }

  const auto created = remote.create(payload);
  record(created.id);
  return {created.id, SyncAction::kCreated};
}

}  // namespace resreg::sync
