#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace resreg::catalog {

enum class LanguageVariety { kEuropeanPt, kBrazilianPt, kAfricanPt, kOtherPt };
enum class LinkKind { kHomepage, kRepository, kPaper, kHostedCopy };
enum class Liveness { kUnprobed, kAlive, kDead };
enum class RatingSource { kSubmitted, kPredicted };

/// Ordered by protectiveness: BACKUP_REQUIRED > METADATA_ONLY.
enum class StoragePolicy { kMetadataOnly, kBackupRequired };

// Wire names are the uppercase tags ("EUROPEAN_PT", "HOSTED_COPY", ...).
std::string_view to_string(LanguageVariety v);
std::string_view to_string(LinkKind k);
std::string_view to_string(Liveness l);
std::string_view to_string(RatingSource s);
std::string_view to_string(StoragePolicy p);

std::optional<LanguageVariety> parse_variety(std::string_view s);
std::optional<LinkKind> parse_link_kind(std::string_view s);
std::optional<Liveness> parse_liveness(std::string_view s);
std::optional<RatingSource> parse_rating_source(std::string_view s);
std::optional<StoragePolicy> parse_storage_policy(std::string_view s);

struct NlpTask {
  std::string id;
  std::string name;
  std::string acronym;
  std::vector<std::string> papers_with_code_ids;

  bool operator==(const NlpTask&) const = default;
};

struct ResourceLink {
  LinkKind kind = LinkKind::kHomepage;
  std::string url;
  Liveness alive = Liveness::kUnprobed;

  bool operator==(const ResourceLink&) const = default;
};

struct PreservationRating {
  int score = 1;
  RatingSource source = RatingSource::kPredicted;

  bool operator==(const PreservationRating&) const = default;
};

inline constexpr int kMinRating = 1;
inline constexpr int kMaxRating = 5;
inline constexpr int kMinDatasetYear = 1980;

struct Dataset {
  std::string id;
  std::string english_name;
  std::optional<std::string> native_name;
  std::optional<std::string> description;
  std::vector<std::string> task_ids;
  std::set<LanguageVariety> varieties;
  std::vector<ResourceLink> links;
  std::optional<std::string> license;
  std::optional<int> year;
  std::optional<PreservationRating> preservation;
  std::optional<StoragePolicy> policy;
  /// Where a human-made backup copy lives, once one exists.
  std::optional<std::string> archive_path;

  bool operator==(const Dataset&) const = default;

  /// First link of the given kind, or nullptr.
  const ResourceLink* find_link(LinkKind kind) const;
  const ResourceLink* hosted_copy() const { return find_link(LinkKind::kHostedCopy); }
};

/// Threshold rule of the hybrid storage policy: scores >= 3 keep metadata
/// only, anything lower is flagged for a backup copy.
/// Throws Error(kDomain) when the score is outside 1..5.
StoragePolicy derive_storage_policy(const PreservationRating& rating);

inline constexpr int kBackupThreshold = 3;

}  // namespace resreg::catalog
