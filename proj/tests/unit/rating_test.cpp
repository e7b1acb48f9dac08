#include <gtest/gtest.h>

#include "resreg/catalog/types.hpp"
#include "resreg/rating/rating.hpp"
#include "support/generators.hpp"

namespace resreg::rating {
namespace {

using catalog::Dataset;
using catalog::LinkKind;
using catalog::Liveness;

const util::Timestamp kNow = *util::parse_utc("2024-06-01T00:00:00Z");

PreservationFeatures features(bool hosted, bool open, bool alive, bool institution,
                              std::optional<int> years = std::nullopt) {
  return PreservationFeatures{hosted, open, alive, institution, years};
}

LinkProbeResult probe(const std::string& url, bool alive) {
  return LinkProbeResult{url, alive ? ProbeStatus::kAlive : ProbeStatus::kDead, alive ? 200 : 404, kNow};
}

TEST(PredictRatingTest, RuleExamples) {
  EXPECT_EQ(predict_rating(features(true, true, false, false)).score, 5);
  EXPECT_EQ(predict_rating(features(false, true, true, true)).score, 3);
  EXPECT_EQ(predict_rating(features(true, false, true, true)).score, 4);
  EXPECT_EQ(predict_rating(features(false, false, true, false)).score, 2);
  EXPECT_EQ(predict_rating(features(false, true, false, true)).score, 1);
  EXPECT_EQ(predict_rating(features(false, false, false, false)).source, catalog::RatingSource::kPredicted);
}

TEST(PredictRatingTest, MatchesRuleTableOnAll32Combinations) {
  int checked = 0;
  for (int bits = 0; bits < 32; ++bits) {
    const bool hosted = bits & 1, open = bits & 2, alive = bits & 4, inst = bits & 8;
    const std::optional<int> years = (bits & 16) ? std::optional<int>(12) : std::nullopt;
    EXPECT_EQ(predict_rating(features(hosted, open, alive, inst, years)).score,
              testing::oracle_rating(hosted, open, alive, inst))
        << "bits=" << bits;
    ++checked;
  }
  EXPECT_EQ(checked, 32);
}

TEST(PredictRatingTest, MonotoneUnderSingleFeatureFlips) {
  for (int bits = 0; bits < 16; ++bits) {
    for (int flip = 0; flip < 4; ++flip) {
      if (bits & (1 << flip)) continue;
      const int raised = bits | (1 << flip);
      auto as_features = [](int b) { return features(b & 1, b & 2, b & 4, b & 8); };
      EXPECT_LE(predict_rating(as_features(bits)).score, predict_rating(as_features(raised)).score)
          << bits << " -> " << raised;
    }
  }
}

TEST(PredictRatingTest, TotalAndDeterministic) {
  for (int bits = 0; bits < 16; ++bits) {
    const auto f = features(bits & 1, bits & 2, bits & 4, bits & 8);
    const auto a = predict_rating(f);
    EXPECT_GE(a.score, 1);
    EXPECT_LE(a.score, 5);
    EXPECT_EQ(a, predict_rating(f));
  }
}

Dataset hosted_mit() {
  Dataset d;
  d.english_name = "LeNER-Br";
  d.license = "MIT";
  d.links = {{LinkKind::kHostedCopy, "https://huggingface.co/datasets/lener_br", Liveness::kUnprobed}};
  return d;
}

TEST(ExtractFeaturesTest, HostedAliveWithOpenLicense) {
  const auto d = hosted_mit();
  const std::vector<LinkProbeResult> probes = {probe(d.links[0].url, true)};
  const auto f = extract_features(d, probes, kNow);
  EXPECT_TRUE(f.has_hosted_copy);
  EXPECT_TRUE(f.has_open_license);
  EXPECT_TRUE(f.all_links_alive);
  EXPECT_EQ(predict_rating(f).score, 5);
}

TEST(ExtractFeaturesTest, ZeroLinks) {
  Dataset d;
  d.license = "MIT";
  const auto f = extract_features(d, {}, kNow);
  EXPECT_FALSE(f.all_links_alive);
  EXPECT_FALSE(f.has_hosted_copy);
  EXPECT_FALSE(f.institution_hosted);
  EXPECT_EQ(predict_rating(f).score, 1);
}

TEST(ExtractFeaturesTest, DeadHostedCopyDoesNotCount) {
  const auto d = hosted_mit();
  const std::vector<LinkProbeResult> probes = {probe(d.links[0].url, false)};
  EXPECT_FALSE(extract_features(d, probes, kNow).has_hosted_copy);
}

TEST(ExtractFeaturesTest, MissingProbeCountsAsDead) {
  auto d = hosted_mit();
  d.links.push_back({LinkKind::kHomepage, "https://example.org/x", Liveness::kAlive});
  const std::vector<LinkProbeResult> probes = {probe(d.links[0].url, true)};
  const auto f = extract_features(d, probes, kNow);
  EXPECT_TRUE(f.has_hosted_copy);
  EXPECT_FALSE(f.all_links_alive);
}

TEST(ExtractFeaturesTest, InstitutionSuffixMatchesAtLabelBoundary) {
  Dataset d;
  d.links = {{LinkKind::kHomepage, "https://nlp.cs.example.edu/corpus", Liveness::kUnprobed}};
  EXPECT_TRUE(extract_features(d, {}, kNow).institution_hosted);
  d.links = {{LinkKind::kHomepage, "https://notedu/corpus", Liveness::kUnprobed}};
  EXPECT_FALSE(extract_features(d, {}, kNow).institution_hosted);
  d.links = {{LinkKind::kHomepage, "https://www.inesctec.pt/x", Liveness::kUnprobed}};
  EXPECT_TRUE(extract_features(d, {}, kNow).institution_hosted);
}

TEST(ExtractFeaturesTest, YearsSinceUpdate) {
  Dataset d;
  EXPECT_FALSE(extract_features(d, {}, kNow).years_since_update);
  d.year = 2008;
  EXPECT_EQ(extract_features(d, {}, kNow).years_since_update, 16);
  d.year = 2030;
  EXPECT_EQ(extract_features(d, {}, kNow).years_since_update, 0);
}

TEST(RatingConfigTest, DefaultOpenLicenses) {
  const auto cfg = RatingConfig::defaults();
  for (const char* open : {"MIT", "mit", "Apache-2.0", "CC-BY-4.0", "CC-BY-SA-4.0", "CC-BY-NC-4.0", "CC0-1.0"}) {
    EXPECT_TRUE(cfg.is_open_license(open)) << open;
  }
  for (const char* closed : {"GPL-3.0", "proprietary", "", "Apache-1.0", "CC-NC"}) {
    EXPECT_FALSE(cfg.is_open_license(closed)) << closed;
  }
}

TEST(RatingConfigTest, LoadsOverridesFromConfigFile) {
  const auto cfg = RatingConfig::from(util::KeyValueConfig::parse(
      "open_licenses = [\"GPL-3.0\"]\ninstitution_suffixes = [\"example.org\"]\n"));
  EXPECT_TRUE(cfg.is_open_license("GPL-3.0"));
  EXPECT_FALSE(cfg.is_open_license("MIT"));
  EXPECT_TRUE(cfg.is_institution_host("data.example.org"));
  EXPECT_FALSE(cfg.is_institution_host("cs.mit.edu"));

  const auto unchanged = RatingConfig::from(util::KeyValueConfig::parse("other = 1\n"));
  EXPECT_TRUE(unchanged.is_open_license("MIT"));
}

TEST(RateTest, OfflineUsesRecordedStateAndUnprobedIsDead) {
  Dataset d;
  d.links = {{LinkKind::kHomepage, "https://example.org/home", Liveness::kUnprobed}};
  const auto report = rate(d, RecordedStateProber{}, kNow);
  EXPECT_EQ(report.rating.score, 1);
  EXPECT_EQ(report.policy, catalog::StoragePolicy::kBackupRequired);

  d.links[0].alive = Liveness::kAlive;
  EXPECT_EQ(rate(d, RecordedStateProber{}, kNow).rating.score, 2);
}

TEST(RateTest, CompositionBackupIffLowRating) {
  testing::Gen gen(99);
  for (int i = 0; i < 500; ++i) {
    const auto d = gen.dataset({"t"}, i);
    std::vector<LinkProbeResult> probes;
    for (const auto& l : d.links) {
      if (gen.coin(0.9)) probes.push_back(probe(l.url, gen.coin()));
    }
    const auto r = predict_rating(extract_features(d, probes, kNow));
    const bool backup = catalog::derive_storage_policy(r) == catalog::StoragePolicy::kBackupRequired;
    EXPECT_EQ(backup, r.score <= 2);
  }
}

TEST(RecordProbesTest, WritesLivenessOntoMatchingLinks) {
  Dataset d;
  d.links = {{LinkKind::kHomepage, "https://a.org/", Liveness::kUnprobed},
             {LinkKind::kPaper, "https://b.org/", Liveness::kUnprobed},
             {LinkKind::kRepository, "https://c.org/", Liveness::kUnprobed}};
  const std::vector<LinkProbeResult> probes = {probe("https://a.org/", true), probe("https://b.org/", false)};
  record_probes(d, probes);
  EXPECT_EQ(d.links[0].alive, Liveness::kAlive);
  EXPECT_EQ(d.links[1].alive, Liveness::kDead);
  EXPECT_EQ(d.links[2].alive, Liveness::kUnprobed);
}

}  // namespace
}  // namespace resreg::rating
