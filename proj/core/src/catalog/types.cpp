#include "resreg/catalog/types.hpp"

#include <array>
#include <utility>

#include "resreg/error.hpp"

namespace resreg::catalog {

namespace {

template <typename Enum, std::size_t N>
using NameTable = std::array<std::pair<Enum, std::string_view>, N>;

constexpr NameTable<LanguageVariety, 4> kVarietyNames{{
    {LanguageVariety::kEuropeanPt, "EUROPEAN_PT"},
    {LanguageVariety::kBrazilianPt, "BRAZILIAN_PT"},
    {LanguageVariety::kAfricanPt, "AFRICAN_PT"},
    {LanguageVariety::kOtherPt, "OTHER_PT"},
}};

constexpr NameTable<LinkKind, 4> kLinkKindNames{{
    {LinkKind::kHomepage, "HOMEPAGE"},
    {LinkKind::kRepository, "REPOSITORY"},
    {LinkKind::kPaper, "PAPER"},
    {LinkKind::kHostedCopy, "HOSTED_COPY"},
}};

constexpr NameTable<Liveness, 3> kLivenessNames{{
    {Liveness::kUnprobed, "UNPROBED"},
    {Liveness::kAlive, "ALIVE"},
    {Liveness::kDead, "DEAD"},
}};

constexpr NameTable<RatingSource, 2> kSourceNames{{
    {RatingSource::kSubmitted, "SUBMITTED"},
    {RatingSource::kPredicted, "PREDICTED"},
}};

constexpr NameTable<StoragePolicy, 2> kPolicyNames{{
    {StoragePolicy::kMetadataOnly, "METADATA_ONLY"},
    {StoragePolicy::kBackupRequired, "BACKUP_REQUIRED"},
}};

template <typename Enum, std::size_t N>
std::string_view name_of(const NameTable<Enum, N>& table, Enum value) {
  for (const auto& [e, name] : table) {
    if (e == value) return name;
  }
  return "?";
}

// Tags are case-sensitive: the canonical form is uppercase only.
template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const NameTable<Enum, N>& table, std::string_view s) {
  for (const auto& [e, name] : table) {
    if (name == s) return e;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(LanguageVariety v) { return name_of(kVarietyNames, v); }
std::string_view to_string(LinkKind k) { return name_of(kLinkKindNames, k); }
std::string_view to_string(Liveness l) { return name_of(kLivenessNames, l); }
std::string_view to_string(RatingSource s) { return name_of(kSourceNames, s); }
std::string_view to_string(StoragePolicy p) { return name_of(kPolicyNames, p); }

std::optional<LanguageVariety> parse_variety(std::string_view s) { return lookup(kVarietyNames, s); }
std::optional<LinkKind> parse_link_kind(std::string_view s) { return lookup(kLinkKindNames, s); }
std::optional<Liveness> parse_liveness(std::string_view s) { return lookup(kLivenessNames, s); }
std::optional<RatingSource> parse_rating_source(std::string_view s) { return lookup(kSourceNames, s); }
std::optional<StoragePolicy> parse_storage_policy(std::string_view s) { return lookup(kPolicyNames, s); }

const ResourceLink* Dataset::find_link(LinkKind kind) const {
  for (const auto& link : links) {
    if (link.kind == kind) return &link;
  }
  return nullptr;
}

StoragePolicy derive_storage_policy(const PreservationRating& rating) {
  if (rating.score < kMinRating || rating.score > kMaxRating) {
    throw Error(ErrorKind::kDomain,
                "preservation score " + std::to_string(rating.score) + " outside 1..5");
  }
  return rating.score >= kBackupThreshold ? StoragePolicy::kMetadataOnly
                                          : StoragePolicy::kBackupRequired;
}

}  // namespace resreg::catalog
