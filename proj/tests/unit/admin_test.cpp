#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "resreg/admin/admin_client.hpp"
#include "resreg/catalog/json.hpp"
#include "resreg/error.hpp"
#include "resreg/service/http_server.hpp"
#include "support/subprocess.hpp"
#include "support/temp_dir.hpp"

namespace resreg::admin {
namespace {

using catalog::Dataset;
using catalog::LinkKind;
using catalog::Liveness;
using nlohmann::json;

constexpr const char* kSecret = "cli-secret";

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

class AdminTest : public ::testing::Test {
 protected:
  void SetUp() override {
    service::RegistryOptions o;
    o.admin_secret = kSecret;
    registry = std::make_unique<service::Registry>(std::move(o));
    server = std::make_unique<service::HttpServer>(*registry);
    server->start();
    token = issue_token(server->base_url(), "admin-tests", kSecret).token;
  }

  AdminClient client(const std::string& bearer) const { return AdminClient(AdminSession(server->base_url(), bearer)); }

  std::map<std::string, std::string> cli_env() const {
    return {{"RESREG_URL", server->base_url()},
            {"RESREG_TOKEN", token},
            {"RESREG_CONFIG", (dir / "absent.toml").string()},
            {"RESREG_ADMIN_SECRET", kSecret}};
  }

  std::unique_ptr<service::Registry> registry;
  std::unique_ptr<service::HttpServer> server;
  std::string token;
  testing::TempDir dir;
};

TEST_F(AdminTest, InsertTaskThenDuplicateIsConflict) {
  const auto admin = client(token);
  const auto task = admin.insert_nlp_task("Named Entity Recognition", "NER", {"named-entity-recognition"});
  EXPECT_FALSE(task.id.empty());
  EXPECT_EQ(error_kind_of([&] { admin.insert_nlp_task("Named Entity Recognition", "NER", {}); }),
            ErrorKind::kConflict);
  EXPECT_EQ(admin.list_nlp_tasks().size(), 1u);
}

TEST_F(AdminTest, InvalidTokenIsAuthError) {
  EXPECT_EQ(error_kind_of([&] { client("bogus").insert_nlp_task("X", "X", {}); }), ErrorKind::kAuth);
  EXPECT_EQ(error_kind_of([&] { issue_token(server->base_url(), "x", "wrong"); }), ErrorKind::kAuth);
}

TEST_F(AdminTest, InsertDatasetGetsPredictedRatingAndDeleteRemovesIt) {
  const auto admin = client(token);
  const auto task = admin.insert_nlp_task("Named Entity Recognition", "NER", {});
  Dataset d;
  d.english_name = "HAREM";
  d.task_ids = {task.id};
  d.varieties = {catalog::LanguageVariety::kEuropeanPt};
  d.links = {{LinkKind::kHomepage, "https://www.linguateca.pt/HAREM/", Liveness::kUnprobed}};
  const auto stored = admin.insert_dataset(d);
  ASSERT_TRUE(stored.preservation);
  EXPECT_EQ(stored.preservation->source, catalog::RatingSource::kPredicted);
  EXPECT_EQ(stored.policy, catalog::StoragePolicy::kBackupRequired);
  EXPECT_EQ(admin.get_dataset_by_name("HAREM"), stored);
  admin.delete_dataset(stored.id);
  EXPECT_EQ(error_kind_of([&] { admin.get_dataset(stored.id); }), ErrorKind::kNotFound);
}

TEST_F(AdminTest, ValidationErrorsCarryViolations) {
  const auto admin = client(token);
  Dataset d;
  try {
    admin.insert_dataset(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
    EXPECT_GE(e.violations().size(), 2u);
  }
}

TEST(AdminSessionTest, TokenIsRedacted) {
  const std::string secret = "Zr8y1wq0vJ6dQjKp3Fh2Lc5Tb9Xa4Ne7Mg0Ru3Sy6Pk";
  AdminSession session("http://127.0.0.1:8080", secret);
  std::ostringstream os;
  os << session;
  EXPECT_EQ(os.str().find(secret), std::string::npos);
  EXPECT_EQ(session.describe().find(secret), std::string::npos);
  EXPECT_NE(session.describe().find("<redacted>"), std::string::npos);
  EXPECT_EQ(session.bearer_token(), secret);
}

TEST(RateTest, OfflineHomepageOnlyIsOne) {
  Dataset d;
  d.english_name = "Homepage only";
  d.links = {{LinkKind::kHomepage, "https://example.org/corpus", Liveness::kUnprobed}};
  RateOptions options;
  options.offline = true;
  const auto report = rate_dataset(d, options);
  EXPECT_EQ(report.rating.score, 1);
  EXPECT_EQ(report.policy, catalog::StoragePolicy::kBackupRequired);
}

TEST_F(AdminTest, CliExitCodes) {
  auto env = cli_env();
  auto r = testing::run({RESREG_ADMIN_BIN, "task", "insert", "--name", "Named Entity Recognition", "--acronym", "NER"}, env);
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("acronym"), "NER");
  r = testing::run({RESREG_ADMIN_BIN, "task", "insert", "--name", "Named Entity Recognition", "--acronym", "NER"}, env);
  EXPECT_EQ(r.exit_code, 1);
  env["RESREG_TOKEN"] = "bogus";
  r = testing::run({RESREG_ADMIN_BIN, "task", "insert", "--name", "Other", "--acronym", "OT"}, env);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_EQ(r.err.find("bogus"), std::string::npos);
  r = testing::run({RESREG_ADMIN_BIN, "--url", "http://127.0.0.1:1", "task", "list"}, env);
  EXPECT_EQ(r.exit_code, 3);
  r = testing::run({RESREG_ADMIN_BIN, "task", "frobnicate"}, env);
  EXPECT_EQ(r.exit_code, 1);
}

TEST_F(AdminTest, CliInsertThenShowRoundTrips) {
  const auto env = cli_env();
  auto r = testing::run({RESREG_ADMIN_BIN, "task", "insert", "--name", "Named Entity Recognition", "--acronym", "NER"}, env);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto task_id = json::parse(r.out).at("id").get<std::string>();

  const auto file = dir / "ds.json";
  std::ofstream(file) << json{{"english_name", "Second HAREM"},
                              {"task_ids", {task_id}},
                              {"varieties", {"EUROPEAN_PT"}},
                              {"license", "CC-BY-4.0"},
                              {"links", {{{"kind", "HOMEPAGE"}, {"url", "https://www.linguateca.pt/HAREM/"}}}}}
                              .dump();
  r = testing::run({RESREG_ADMIN_BIN, "dataset", "insert", "--json", file.string()}, env);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto inserted = json::parse(r.out);

  r = testing::run({RESREG_ADMIN_BIN, "dataset", "show", "--name", "Second HAREM"}, env);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out), inserted);

  r = testing::run({RESREG_ADMIN_BIN, "dataset", "list", "--policy", "BACKUP_REQUIRED"}, env);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).size(), 1u);

  r = testing::run({RESREG_ADMIN_BIN, "rate", file.string(), "--offline"}, env);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("rating").at("score"), 1);
}

TEST_F(AdminTest, CliTokenIssueUsesEnvironmentSecret) {
  auto env = cli_env();
  auto r = testing::run({RESREG_ADMIN_BIN, "token", "issue", "--label", "ci"}, env);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto issued = json::parse(r.out).at("token").get<std::string>();
  EXPECT_NO_THROW(registry->authorize(issued));
  env["RESREG_ADMIN_SECRET"] = "wrong";
  EXPECT_EQ(testing::run({RESREG_ADMIN_BIN, "token", "issue", "--label", "ci"}, env).exit_code, 2);
}

TEST_F(AdminTest, ConfigFileSuppliesUrlAndToken) {
  const auto cfg = dir / "config.toml";
  std::ofstream(cfg) << "# admin\nurl = \"" << server->base_url() << "\"\ntoken = \"" << token << "\"\n";
  std::map<std::string, std::string> env = {{"RESREG_CONFIG", cfg.string()}, {"RESREG_URL", ""}, {"RESREG_TOKEN", ""}};
  auto r = testing::run({RESREG_ADMIN_BIN, "task", "insert", "--name", "Parsing", "--acronym", "DEP"}, env);
  EXPECT_EQ(r.exit_code, 0) << r.err;
}

}  // namespace
}  // namespace resreg::admin
