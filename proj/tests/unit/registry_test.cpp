#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>

#include "resreg/error.hpp"
#include "resreg/service/registry.hpp"
#include "resreg/util/crypto.hpp"
#include "resreg/util/strings.hpp"
#include "support/generators.hpp"
#include "support/temp_dir.hpp"

namespace resreg::service {
namespace {

using catalog::Dataset;
using catalog::LanguageVariety;
using catalog::LinkKind;
using catalog::Liveness;
using catalog::NlpTask;
using catalog::StoragePolicy;

constexpr const char* kSecret = "admin-secret";

template <typename F>
ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::kDomain;
}

RegistryOptions options(const std::filesystem::path& store = {}) {
  RegistryOptions o;
  o.store_path = store;
  o.admin_secret = kSecret;
  o.clock = [] { return *util::parse_utc("2024-06-01T00:00:00Z"); };
  return o;
}

NlpTask ner_task() { return NlpTask{"", "Named Entity Recognition", "NER", {"named-entity-recognition"}}; }

Dataset harem(const std::string& task_id) {
  Dataset d;
  d.english_name = "HAREM";
  d.task_ids = {task_id};
  d.varieties = {LanguageVariety::kEuropeanPt};
  d.links = {{LinkKind::kHomepage, "https://www.linguateca.pt/HAREM/", Liveness::kAlive}};
  d.year = 2006;
  return d;
}

class RegistryTest : public ::testing::Test {
 protected:
  Registry registry{options()};
  std::string token = registry.issue_token("tests", kSecret).token;
};

TEST_F(RegistryTest, IssuedTokenIsUrlSafeAndStoredHashed) {
  EXPECT_EQ(token.size(), 43u);
  EXPECT_TRUE(std::all_of(token.begin(), token.end(),
                          [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_'; }));
  const auto s = registry.snapshot();
  ASSERT_EQ(s->tokens.size(), 1u);
  EXPECT_EQ(s->tokens[0].token_sha256, util::sha256_hex(token));
  EXPECT_EQ(to_json(*s).dump().find(token), std::string::npos);
}

TEST_F(RegistryTest, WrongAdminSecretCannotIssue) {
  EXPECT_EQ(error_kind_of([&] { registry.issue_token("x", "nope"); }), ErrorKind::kAuth);
  EXPECT_EQ(error_kind_of([&] { registry.issue_token("x", ""); }), ErrorKind::kAuth);
}

TEST_F(RegistryTest, InsertTaskThenDuplicateConflicts) {
  const auto created = registry.create_task(ner_task(), token);
  EXPECT_FALSE(created.id.empty());
  EXPECT_EQ(registry.get_task(created.id), created);
  auto dup = ner_task();
  dup.name = "named entity recognition";
  EXPECT_EQ(error_kind_of([&] { registry.create_task(dup, token); }), ErrorKind::kConflict);
  EXPECT_EQ(registry.list_tasks().size(), 1u);
}

TEST_F(RegistryTest, InvalidTaskIsRejectedWithoutCommit) {
  const auto before = registry.revision();
  NlpTask bad{"", "", "lower", {}};
  try {
    registry.create_task(bad, token);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
    EXPECT_GE(e.violations().size(), 2u);
  }
  EXPECT_EQ(registry.revision(), before);
}

TEST_F(RegistryTest, CreatePredictsRatingAndDerivesPolicy) {
  const auto task = registry.create_task(ner_task(), token);
  const auto d = registry.create_dataset(harem(task.id), token);
  ASSERT_TRUE(d.preservation);
  EXPECT_EQ(d.preservation->source, catalog::RatingSource::kPredicted);
  EXPECT_EQ(d.preservation->score, 2);
  EXPECT_EQ(d.policy, StoragePolicy::kBackupRequired);
  EXPECT_EQ(registry.get_dataset(d.id), d);
  EXPECT_EQ(registry.get_dataset_by_name("harem").id, d.id);
}

TEST_F(RegistryTest, SubmittedRatingWinsAndPolicyIsRederived) {
  const auto task = registry.create_task(ner_task(), token);
  auto d = harem(task.id);
  d.preservation = catalog::PreservationRating{4, catalog::RatingSource::kSubmitted};
  d.policy = StoragePolicy::kBackupRequired;  // inconsistent; the store derives its own
  const auto stored = registry.create_dataset(d, token);
  EXPECT_EQ(stored.preservation->score, 4);
  EXPECT_EQ(stored.policy, StoragePolicy::kMetadataOnly);
}

TEST_F(RegistryTest, UnknownTaskReferenceIsValidationError) {
  EXPECT_EQ(error_kind_of([&] { registry.create_dataset(harem("task-missing"), token); }), ErrorKind::kValidation);
}

TEST_F(RegistryTest, ReferencedTaskCannotBeDeleted) {
  const auto task = registry.create_task(ner_task(), token);
  const auto d = registry.create_dataset(harem(task.id), token);
  EXPECT_EQ(error_kind_of([&] { registry.delete_task(task.id, token); }), ErrorKind::kConflict);
  registry.delete_dataset(d.id, token);
  registry.delete_task(task.id, token);
  EXPECT_TRUE(registry.list_tasks().empty());
}

TEST_F(RegistryTest, DeleteThenGetIsNotFound) {
  const auto task = registry.create_task(ner_task(), token);
  const auto d = registry.create_dataset(harem(task.id), token);
  registry.delete_dataset(d.id, token);
  EXPECT_EQ(error_kind_of([&] { registry.get_dataset(d.id); }), ErrorKind::kNotFound);
  EXPECT_EQ(error_kind_of([&] { registry.delete_dataset(d.id, token); }), ErrorKind::kNotFound);
}

TEST_F(RegistryTest, ExpectedRevisionGuardsUpdates) {
  const auto task = registry.create_task(ner_task(), token);
  const auto d = registry.create_dataset(harem(task.id), token);
  const auto rev = registry.revision();
  auto edit = d;
  edit.description = "first";
  registry.update_dataset(d.id, edit, token, rev);
  edit.description = "second";
  EXPECT_EQ(error_kind_of([&] { registry.update_dataset(d.id, edit, token, rev); }), ErrorKind::kConflict);
  EXPECT_EQ(registry.get_dataset(d.id).description, "first");
  EXPECT_EQ(error_kind_of([&] { registry.delete_dataset(d.id, token, rev); }), ErrorKind::kConflict);
}

TEST_F(RegistryTest, RevisionIncrementsOncePerCommit) {
  const auto r0 = registry.revision();
  const auto task = registry.create_task(ner_task(), token);
  EXPECT_EQ(registry.revision(), r0 + 1);
  registry.create_dataset(harem(task.id), token);
  EXPECT_EQ(registry.revision(), r0 + 2);
  EXPECT_ANY_THROW(registry.create_dataset(harem(task.id), token));
  EXPECT_EQ(registry.revision(), r0 + 2);
}

TEST_F(RegistryTest, RevokedTokenIsRejected) {
  registry.create_task(ner_task(), token);
  registry.revoke_token(token, kSecret);
  auto other = ner_task();
  other.name = "Other";
  EXPECT_EQ(error_kind_of([&] { registry.create_task(other, token); }), ErrorKind::kAuth);
  EXPECT_EQ(registry.list_tasks().size(), 1u);
}

TEST_F(RegistryTest, AuthPropertyRandomTokensNeverMutate) {
  const auto task = registry.create_task(ner_task(), token);
  const auto d = registry.create_dataset(harem(task.id), token);
  const auto before = *registry.snapshot();
  for (int i = 0; i < 100; ++i) {
    const std::string bogus = i % 10 == 0 ? std::string() : util::random_urlsafe(kTokenBytes);
    EXPECT_EQ(error_kind_of([&] { registry.create_task(NlpTask{"", "T" + std::to_string(i), "T", {}}, bogus); }),
              ErrorKind::kAuth);
    EXPECT_EQ(error_kind_of([&] { registry.update_task(task.id, ner_task(), bogus); }), ErrorKind::kAuth);
    EXPECT_EQ(error_kind_of([&] { registry.delete_task(task.id, bogus); }), ErrorKind::kAuth);
    EXPECT_EQ(error_kind_of([&] { registry.create_dataset(harem(task.id), bogus); }), ErrorKind::kAuth);
    EXPECT_EQ(error_kind_of([&] { registry.update_dataset(d.id, d, bogus); }), ErrorKind::kAuth);
    EXPECT_EQ(error_kind_of([&] { registry.delete_dataset(d.id, bogus); }), ErrorKind::kAuth);
  }
  EXPECT_EQ(*registry.snapshot(), before);
}

// Independent filter: a straight scan with its own matching rules.
std::vector<std::string> brute_force_ids(const StoreSnapshot& s, const DatasetFilter& f) {
  std::vector<std::pair<std::string, std::string>> keyed;
  for (const auto& d : s.datasets) {
    bool ok = true;
    if (f.task) {
      ok = false;
      for (const auto& tid : d.task_ids) {
        for (const auto& t : s.tasks) {
          if (t.id == tid && util::casefold(t.name) == util::casefold(*f.task)) ok = true;
        }
      }
    }
    if (f.variety && d.varieties.count(*f.variety) == 0) ok = false;
    if (f.policy && (!d.policy || *d.policy != *f.policy)) ok = false;
    if (ok) keyed.emplace_back(util::casefold(d.english_name), d.id);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::string> ids;
  for (auto& [_, id] : keyed) ids.push_back(id);
  return ids;
}

TEST(RegistryPropertyTest, FilterMatchesBruteForceScan) {
  testing::Gen gen(2024);
  for (int round = 0; round < 5; ++round) {
    Registry registry(options());
    const auto token = registry.issue_token("p", kSecret).token;
    std::vector<std::string> task_ids;
    std::vector<std::string> task_names;
    for (int i = 0; i < 4; ++i) {
      const auto t = registry.create_task(gen.task(i), token);
      task_ids.push_back(t.id);
      task_names.push_back(t.name);
    }
    const int n = gen.uniform(0, 200);
    for (int i = 0; i < n; ++i) registry.create_dataset(gen.dataset(task_ids, i), token);
    const auto snap = registry.snapshot();

    for (int q = 0; q < 40; ++q) {
      DatasetFilter f;
      if (gen.coin()) {
        f.task = gen.coin(0.9) ? gen.pick(task_names) : std::string("no such task");
        if (gen.coin()) f.task = util::casefold(*f.task);
      }
      if (gen.coin()) f.variety = static_cast<LanguageVariety>(gen.uniform(0, 3));
      if (gen.coin()) f.policy = gen.coin() ? StoragePolicy::kBackupRequired : StoragePolicy::kMetadataOnly;
      std::vector<std::string> got;
      for (const auto& d : registry.list_datasets(f)) got.push_back(d.id);
      EXPECT_EQ(got, brute_force_ids(*snap, f)) << "round " << round << " query " << q;
    }
  }
}

TEST(RegistryPropertyTest, EveryStoredDatasetHasConsistentPolicy) {
  testing::Gen gen(7);
  Registry registry(options());
  const auto token = registry.issue_token("p", kSecret).token;
  const auto task = registry.create_task(gen.task(0), token);
  for (int i = 0; i < 150; ++i) {
    auto d = gen.dataset({task.id}, i);
    if (gen.coin(0.3)) d.preservation = catalog::PreservationRating{gen.uniform(1, 5), catalog::RatingSource::kSubmitted};
    registry.create_dataset(d, token);
  }
  for (const auto& d : registry.list_datasets()) {
    ASSERT_TRUE(d.preservation);
    ASSERT_TRUE(d.policy);
    EXPECT_EQ(*d.policy == StoragePolicy::kBackupRequired, d.preservation->score < 3) << d.english_name;
  }
}

TEST(RegistryPersistenceTest, RestartRestoresIdenticalState) {
  testing::TempDir dir;
  const auto store = dir / "store.json";
  testing::Gen gen(11);
  StoreSnapshot before;
  std::string token;
  {
    Registry registry(options(store));
    token = registry.issue_token("p", kSecret).token;
    const auto task = registry.create_task(gen.task(0), token);
    for (int i = 0; i < 30; ++i) registry.create_dataset(gen.dataset({task.id}, i), token);
    before = *registry.snapshot();
  }
  Registry reopened(options(store));
  EXPECT_EQ(*reopened.snapshot(), before);
  EXPECT_NO_THROW(reopened.authorize(token));
}

TEST(RegistryPersistenceTest, CorruptStoreFailsLoudly) {
  testing::TempDir dir;
  const auto store = dir / "store.json";
  { std::ofstream(store) << "{ not json"; }
  EXPECT_EQ(error_kind_of([&] { Registry r(options(store)); }), ErrorKind::kIo);
}

TEST(RegistrySeedTest, SeedAppliesOnlyToEmptyStore) {
  StoreSnapshot fixture;
  fixture.tasks.push_back(NlpTask{"task-ner", "Named Entity Recognition", "NER", {}});
  auto d = harem("task-ner");
  d.id = "ds-harem";
  fixture.datasets.push_back(d);

  Registry registry(options());
  EXPECT_TRUE(registry.apply_seed(fixture));
  EXPECT_EQ(registry.revision(), 1u);
  const auto seeded = registry.get_dataset("ds-harem");
  EXPECT_EQ(seeded.policy, StoragePolicy::kBackupRequired);
  EXPECT_FALSE(registry.apply_seed(fixture));
  EXPECT_EQ(registry.revision(), 1u);
}

TEST(RegistrySeedTest, InvalidSeedIsRejected) {
  StoreSnapshot fixture;
  fixture.datasets.push_back(harem("task-missing"));
  fixture.datasets.back().id = "ds-x";
  Registry registry(options());
  EXPECT_EQ(error_kind_of([&] { registry.apply_seed(fixture); }), ErrorKind::kValidation);
  EXPECT_EQ(registry.revision(), 0u);
}

}  // namespace
}  // namespace resreg::service
