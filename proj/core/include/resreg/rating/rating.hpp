#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "resreg/catalog/types.hpp"
#include "resreg/rating/probe.hpp"
#include "resreg/util/kv_config.hpp"
#include "resreg/util/time.hpp"

namespace resreg::rating {

struct PreservationFeatures {
  bool has_hosted_copy = false;
  bool has_open_license = false;
  bool all_links_alive = false;
  bool institution_hosted = false;
  /// Reserved: extracted but not consulted by the rule tree.
  std::optional<int> years_since_update;

  bool operator==(const PreservationFeatures&) const = default;
};

void to_json(nlohmann::json& j, const PreservationFeatures& f);

/// License ids and host suffixes that feed the boolean features.
struct RatingConfig {
  /// Case-insensitive ids; an entry ending in '*' matches by prefix.
  std::vector<std::string> open_licenses;
  /// Matched against link hosts at a label boundary ("edu" matches "cs.mit.edu").
  std::vector<std::string> institution_suffixes;

  static RatingConfig defaults();

  /// Keys `open_licenses` and `institution_suffixes`; missing keys keep defaults.
  static RatingConfig from(const util::KeyValueConfig& config);

  bool is_open_license(std::string_view license) const;
  bool is_institution_host(std::string_view host) const;
};

PreservationFeatures extract_features(const catalog::Dataset& dataset,
                                      std::span<const LinkProbeResult> probes, util::Timestamp now,
                                      const RatingConfig& config = RatingConfig::defaults());

/// The preservation decision tree, evaluated top-down, first match wins:
///
///   hosted copy and open license      -> 5
///   hosted copy                       -> 4
///   all links alive and institutional -> 3
///   all links alive                   -> 2
///   otherwise                         -> 1
catalog::PreservationRating predict_rating(const PreservationFeatures& features);

struct RatingReport {
  PreservationFeatures features;
  catalog::PreservationRating rating;
  catalog::StoragePolicy policy = catalog::StoragePolicy::kBackupRequired;
  std::vector<LinkProbeResult> probes;
};

void to_json(nlohmann::json& j, const RatingReport& r);

/// Probe, extract, predict, and derive the policy in one go.
RatingReport rate(const catalog::Dataset& dataset, const LinkProber& prober, util::Timestamp now,
                  const RatingConfig& config = RatingConfig::defaults());

}  // namespace resreg::rating
