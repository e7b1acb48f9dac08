// Administrative command-line client for the registry.
//
// Exit codes: 0 success, 1 validation/conflict/other, 2 auth, 3 transport.
// Registry URL and token: --url/--token > RESREG_URL/RESREG_TOKEN > config
// file (`url = ...`, `token = ...`) at --config, $RESREG_CONFIG or
// $XDG_CONFIG_HOME/resreg/config.toml (~/.config/resreg/config.toml).

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "resreg/admin/admin_client.hpp"
#include "resreg/catalog/json.hpp"
#include "resreg/client/client.hpp"
#include "resreg/error.hpp"
#include "resreg/sync/sync.hpp"
#include "resreg/util/atomic_file.hpp"
#include "resreg/util/kv_config.hpp"

namespace {

using namespace resreg;
using nlohmann::json;

std::string getenv_str(const char* name) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

std::filesystem::path default_config_path() {
  if (auto p = getenv_str("RESREG_CONFIG"); !p.empty()) return p;
  if (auto xdg = getenv_str("XDG_CONFIG_HOME"); !xdg.empty()) return std::filesystem::path(xdg) / "resreg/config.toml";
  if (auto home = getenv_str("HOME"); !home.empty()) return std::filesystem::path(home) / ".config/resreg/config.toml";
  return {};
}

struct Globals {
  std::string url;
  std::string token;
  std::string config;

  // flag > environment > config file
  void resolve() {
    util::KeyValueConfig file;
    const std::filesystem::path path = config.empty() ? default_config_path() : std::filesystem::path(config);
    if (!path.empty() && std::filesystem::exists(path)) file = util::KeyValueConfig::load(path);
    if (url.empty()) url = getenv_str("RESREG_URL");
    if (url.empty()) url = file.get("url").value_or("http://127.0.0.1:8080");
    if (token.empty()) token = getenv_str("RESREG_TOKEN");
    if (token.empty()) token = file.get("token").value_or("");
  }

  admin::AdminClient admin() const { return admin::AdminClient(admin::AdminSession(url, token)); }
};

json read_json_file(const std::string& path) {
  const auto text = util::read_file_if_exists(path);
  if (!text) throw Error(ErrorKind::kIo, "cannot read " + path);
  try {
    return json::parse(*text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kBadRequest, path + ": " + e.what());
  }
}

void print(const json& j) { std::cout << j.dump(2) << std::endl; }

int report(const Error& e) {
  std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
  for (const auto& v : e.violations()) std::cerr << "  " << v.field << ": " << v.message << "\n";
  return exit_code_for(e.kind());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"registry administration"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--url", g.url, "registry base URL");
  app.add_option("--token", g.token, "bearer token");
  app.add_option("--config", g.config, "config file");

  std::function<void()> action;

  // token
  auto* token_cmd = app.add_subcommand("token", "issue or revoke API tokens")->require_subcommand(1);
  std::string label;
  std::string secret_env = "RESREG_ADMIN_SECRET";
  auto* token_issue = token_cmd->add_subcommand("issue", "issue a token (admin secret from the environment)");
  token_issue->add_option("--label", label)->required();
  token_issue->add_option("--admin-secret-env", secret_env, "variable holding the admin secret");
  token_issue->callback([&] {
    action = [&] {
      const auto issued = admin::issue_token(g.url, label, getenv_str(secret_env.c_str()));
      print(json{{"token", issued.token}, {"label", issued.label}, {"issued_at", util::format_utc(issued.issued_at)}});
    };
  });
  std::string revoke_value;
  auto* token_revoke = token_cmd->add_subcommand("revoke", "revoke a token");
  token_revoke->add_option("token", revoke_value)->required();
  token_revoke->add_option("--admin-secret-env", secret_env);
  token_revoke->callback([&] {
    action = [&] {
      admin::revoke_token(g.url, revoke_value, getenv_str(secret_env.c_str()));
      print(json{{"revoked", true}});
    };
  });

  // task
  auto* task_cmd = app.add_subcommand("task", "NLP task taxonomy")->require_subcommand(1);
  std::string task_name, acronym, json_file, id;
  std::vector<std::string> pwc_ids;
  auto* task_insert = task_cmd->add_subcommand("insert", "insert a task");
  task_insert->add_option("--name", task_name);
  task_insert->add_option("--acronym", acronym);
  task_insert->add_option("--pwc-id", pwc_ids, "Papers-With-Code slug (repeatable)");
  task_insert->add_option("--json", json_file, "task JSON file")->check(CLI::ExistingFile);
  task_insert->callback([&] {
    action = [&] {
      const auto client = g.admin();
      if (!json_file.empty()) {
        print(json(client.insert_nlp_task(catalog::parse_task(read_json_file(json_file)))));
      } else {
        print(json(client.insert_nlp_task(task_name, acronym, pwc_ids)));
      }
    };
  });
  task_cmd->add_subcommand("list", "list tasks")->callback([&] {
    action = [&] { print(json(g.admin().list_nlp_tasks())); };
  });
  auto* task_delete = task_cmd->add_subcommand("delete", "delete an unreferenced task");
  task_delete->add_option("id", id)->required();
  task_delete->callback([&] {
    action = [&] {
      g.admin().delete_nlp_task(id);
      print(json{{"deleted", id}});
    };
  });

  // dataset
  auto* ds_cmd = app.add_subcommand("dataset", "dataset records")->require_subcommand(1);
  std::optional<std::uint64_t> expected_revision;
  std::string by_name, filter_task, filter_variety, filter_policy;
  auto* ds_insert = ds_cmd->add_subcommand("insert", "insert a dataset");
  ds_insert->add_option("--json", json_file)->required()->check(CLI::ExistingFile);
  ds_insert->callback([&] {
    action = [&] { print(json(g.admin().insert_dataset(catalog::parse_dataset(read_json_file(json_file))))); };
  });
  auto* ds_show = ds_cmd->add_subcommand("show", "show one dataset by id or --name");
  ds_show->add_option("id", id);
  ds_show->add_option("--name", by_name, "english_name");
  ds_show->callback([&] {
    action = [&] {
      const auto client = g.admin();
      if (!by_name.empty()) {
        print(json(client.get_dataset_by_name(by_name)));
      } else if (!id.empty()) {
        print(json(client.get_dataset(id)));
      } else {
        throw Error(ErrorKind::kBadRequest, "give a dataset id or --name");
      }
    };
  });
  auto* ds_update = ds_cmd->add_subcommand("update", "replace a dataset");
  ds_update->add_option("id", id)->required();
  ds_update->add_option("--json", json_file)->required()->check(CLI::ExistingFile);
  ds_update->add_option("--expected-revision", expected_revision, "reject if the store moved on");
  ds_update->callback([&] {
    action = [&] {
      print(json(g.admin().update_dataset(id, catalog::parse_dataset(read_json_file(json_file)), expected_revision)));
    };
  });
  auto* ds_delete = ds_cmd->add_subcommand("delete", "delete a dataset");
  ds_delete->add_option("id", id)->required();
  ds_delete->add_option("--expected-revision", expected_revision);
  ds_delete->callback([&] {
    action = [&] {
      g.admin().delete_dataset(id, expected_revision);
      print(json{{"deleted", id}});
    };
  });
  auto* ds_list = ds_cmd->add_subcommand("list", "list datasets");
  ds_list->add_option("--task", filter_task, "task name");
  ds_list->add_option("--variety", filter_variety);
  ds_list->add_option("--policy", filter_policy);
  ds_list->callback([&] {
    action = [&] {
      service::DatasetFilter filter;
      if (!filter_task.empty()) filter.task = filter_task;
      if (!filter_variety.empty()) {
        filter.variety = catalog::parse_variety(filter_variety);
        if (!filter.variety) throw Error(ErrorKind::kBadRequest, "unknown variety " + filter_variety);
      }
      if (!filter_policy.empty()) {
        filter.policy = catalog::parse_storage_policy(filter_policy);
        if (!filter.policy) throw Error(ErrorKind::kBadRequest, "unknown policy " + filter_policy);
      }
      print(json(g.admin().list_datasets(filter)));
    };
  });

  // rate
  auto* rate_cmd = app.add_subcommand("rate", "compute a dataset's preservation rating");
  std::string rate_file, rating_config;
  bool offline = false;
  double timeout = 5.0;
  rate_cmd->add_option("file", rate_file, "dataset JSON file");
  rate_cmd->add_option("--json", rate_file, "dataset JSON file");
  rate_cmd->add_flag("--offline", offline, "skip probes; unprobed links count as dead");
  rate_cmd->add_option("--rating-config", rating_config, "open licenses / institutional suffixes");
  rate_cmd->add_option("--timeout", timeout, "probe timeout in seconds")->check(CLI::PositiveNumber);
  rate_cmd->callback([&] {
    action = [&] {
      if (rate_file.empty()) throw Error(ErrorKind::kBadRequest, "rate needs a dataset JSON file");
      admin::RateOptions options;
      options.offline = offline;
      options.probe.timeout = std::chrono::milliseconds(static_cast<long long>(timeout * 1000));
      if (!rating_config.empty()) {
        options.config = rating::RatingConfig::from(util::KeyValueConfig::load(rating_config));
      }
      print(json(admin::rate_dataset(catalog::parse_dataset(read_json_file(rate_file)), options)));
    };
  });

  // sync
  auto* sync_cmd = app.add_subcommand("sync", "push metadata to external catalogs")->require_subcommand(1);
  std::string endpoint, username, ledger_path = getenv_str("RESREG_PWC_LEDGER");
  std::vector<std::string> dataset_ids;
  auto* sync_pwc = sync_cmd->add_subcommand("pwc", "sync to a Papers-With-Code-style catalog");
  sync_pwc->add_option("--endpoint", endpoint)->required();
  sync_pwc->add_option("--username", username)->required();
  sync_pwc->add_option("--ledger", ledger_path, "sync ledger file (default pwc-ledger.json)");
  sync_pwc->add_option("--dataset", dataset_ids, "dataset id to sync (repeatable; default all)");
  sync_pwc->callback([&] {
    action = [&] {
      if (ledger_path.empty()) ledger_path = "pwc-ledger.json";
      const sync::ExternalCredentials creds{username, getenv_str("RESREG_PWC_PASSWORD")};
      auto remote = sync::PwcHttpClient::login(creds, endpoint);
      auto ledger = sync::SyncLedger::load(ledger_path);

      std::vector<catalog::Dataset> datasets;
      const client::RegistryClient registry(g.url);
      if (dataset_ids.empty()) {
        datasets = registry.all_datasets();
      } else {
        const auto client = g.admin();
        for (const auto& ds_id : dataset_ids) datasets.push_back(client.get_dataset(ds_id));
      }

      auto results = json::array();
      for (const auto& d : datasets) {
        const auto outcome = sync::sync_insert(remote, d, ledger);
        ledger.save(ledger_path);
        results.push_back({{"dataset_id", d.id},
                           {"english_name", d.english_name},
                           {"external_id", outcome.external_id},
                           {"action", sync::to_string(outcome.action)}});
      }
      print(results);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    g.resolve();
    if (action) action();
  } catch (const Error& e) {
    return report(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
