#pragma once

#include <string>

#include "resreg/catalog/types.hpp"
#include "resreg/sync/external_catalog.hpp"
#include "resreg/sync/ledger.hpp"
#include "resreg/util/time.hpp"

namespace resreg::sync {

enum class SyncAction { kCreated, kAdopted, kUpdated, kUnchanged };
std::string_view to_string(SyncAction action);

struct SyncOutcome {
  std::string external_id;
  SyncAction action = SyncAction::kUnchanged;
};

/// Publishes one dataset idempotently.
///
/// With a ledger record whose hash matches the current payload nothing is
/// sent. A differing hash patches the recorded remote. Without a record the
/// remote catalog is searched by name first: no match creates, a single
/// match not owned by another local dataset is adopted (and patched if it
/// differs). A name owned by another local dataset, or several remote
/// matches, is Error(kConflict). The ledger is updated in place on success.
SyncOutcome sync_insert(ExternalCatalog& catalog, const catalog::Dataset& dataset, SyncLedger& ledger,
                        util::Timestamp now = util::now_utc());

}  // namespace resreg::sync
