#include "resreg/service/registry.hpp"

#include <algorithm>
#include <set>

#include "resreg/catalog/json.hpp"
#include "resreg/catalog/validation.hpp"
#include "resreg/error.hpp"
#include "resreg/util/atomic_file.hpp"
#include "resreg/util/crypto.hpp"
#include "resreg/util/strings.hpp"

namespace resreg::service {

using catalog::Dataset;
using catalog::NlpTask;
using nlohmann::json;

const Dataset* StoreSnapshot::find_dataset(std::string_view id) const {
  const auto it = std::find_if(datasets.begin(), datasets.end(), [&](const Dataset& d) { return d.id == id; });
  return it == datasets.end() ? nullptr : &*it;
}

const NlpTask* StoreSnapshot::find_task(std::string_view id) const {
  const auto it = std::find_if(tasks.begin(), tasks.end(), [&](const NlpTask& t) { return t.id == id; });
  return it == tasks.end() ? nullptr : &*it;
}

json to_json(const StoreSnapshot& s, bool include_tokens) {
  json j;
  j["revision"] = s.revision;
  j["tasks"] = s.tasks;
  j["datasets"] = s.datasets;
  if (include_tokens) {
    auto tokens = json::array();
    for (const auto& t : s.tokens) {
      tokens.push_back({{"token_sha256", t.token_sha256},
                        {"label", t.label},
                        {"issued_at", util::format_utc(t.issued_at)},
                        {"revoked", t.revoked}});
    }
    j["tokens"] = std::move(tokens);
  }
  return j;
}

namespace {

// Re-throws a nested parse failure with violations prefixed by `path`.
template <typename Parse>
auto parse_at(const std::string& path, Parse&& parse) {
  try {
    return parse();
  } catch (const Error& e) {
    auto violations = e.violations();
    for (auto& v : violations) v.field = path + "." + v.field;
    if (violations.empty()) violations.push_back({path, e.what()});
    throw Error(ErrorKind::kValidation, "malformed snapshot", std::move(violations));
  }
}

}  // namespace

StoreSnapshot parse_snapshot(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::kBadRequest, "snapshot must be a JSON object");
  StoreSnapshot s;
  if (auto it = j.find("revision"); it != j.end()) s.revision = it->get<std::uint64_t>();
  if (auto it = j.find("tasks"); it != j.end()) {
    for (std::size_t i = 0; i < it->size(); ++i) {
      s.tasks.push_back(parse_at("tasks[" + std::to_string(i) + "]",
                                 [&] { return catalog::parse_task((*it)[i]); }));
    }
  }
  if (auto it = j.find("datasets"); it != j.end()) {
    for (std::size_t i = 0; i < it->size(); ++i) {
      s.datasets.push_back(parse_at("datasets[" + std::to_string(i) + "]",
                                    [&] { return catalog::parse_dataset((*it)[i]); }));
    }
  }
  if (auto it = j.find("tokens"); it != j.end()) {
    for (const auto& t : *it) {
      ApiToken token;
      token.token_sha256 = t.at("token_sha256").get<std::string>();
      token.label = t.value("label", "");
      if (auto ts = util::parse_utc(t.value("issued_at", ""))) token.issued_at = *ts;
      token.revoked = t.value("revoked", false);
      s.tokens.push_back(std::move(token));
    }
  }
  return s;
}

StoreSnapshot load_fixture(const std::filesystem::path& path) {
  const auto text = util::read_file_if_exists(path);
  if (!text) throw Error(ErrorKind::kIo, "fixture not found: " + path.string());
  StoreSnapshot s;
  try {
    s = parse_snapshot(json::parse(*text));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kBadRequest, "fixture " + path.string() + ": " + e.what());
  }
  s.tokens.clear();
  s.revision = 0;
  return s;
}

std::vector<Dataset> filter_datasets(const StoreSnapshot& snapshot, const DatasetFilter& filter) {
  std::set<std::string> task_ids;
  if (filter.task) {
    for (const auto& t : snapshot.tasks) {
      if (util::iequals(t.name, *filter.task)) task_ids.insert(t.id);
    }
    if (task_ids.empty()) return {};
  }

  std::vector<Dataset> out;
  for (const auto& d : snapshot.datasets) {
    if (filter.task && std::none_of(d.task_ids.begin(), d.task_ids.end(),
                                    [&](const std::string& id) { return task_ids.contains(id); })) {
      continue;
    }
    if (filter.variety && !d.varieties.contains(*filter.variety)) continue;
    if (filter.policy && d.policy != filter.policy) continue;
    out.push_back(d);
  }
  std::sort(out.begin(), out.end(), [](const Dataset& a, const Dataset& b) {
    const auto ka = util::casefold(a.english_name);
    const auto kb = util::casefold(b.english_name);
    return ka != kb ? ka < kb : a.id < b.id;
  });
  return out;
}

namespace {

std::set<std::string> task_id_set(const StoreSnapshot& s) {
  std::set<std::string> ids;
  for (const auto& t : s.tasks) ids.insert(t.id);
  return ids;
}

void throw_if_invalid(catalog::ValidationResult result, const char* what) {
  if (!result.ok()) {
    throw Error(ErrorKind::kValidation, std::string("invalid ") + what, std::move(result.violations));
  }
}

void check_unique_task_name(const StoreSnapshot& s, const NlpTask& t, std::string_view self_id = {}) {
  for (const auto& other : s.tasks) {
    if (other.id != self_id && util::iequals(other.name, t.name)) {
      throw Error(ErrorKind::kConflict, "a task named '" + other.name + "' already exists");
    }
  }
}

void check_unique_dataset_name(const StoreSnapshot& s, const Dataset& d, std::string_view self_id = {}) {
  for (const auto& other : s.datasets) {
    if (other.id != self_id && util::iequals(other.english_name, d.english_name)) {
      throw Error(ErrorKind::kConflict, "a dataset named '" + other.english_name + "' already exists");
    }
  }
}

void check_expected_revision(const StoreSnapshot& s, std::optional<std::uint64_t> expected) {
  if (expected && *expected != s.revision) {
    throw Error(ErrorKind::kConflict, "stale revision: expected " + std::to_string(*expected) +
                                          ", store is at " + std::to_string(s.revision));
  }
}

std::string new_id(const char* prefix) { return std::string(prefix) + util::random_hex(8); }

}  // namespace

Registry::Registry(RegistryOptions options) : options_(std::move(options)) {
  if (!options_.prober) options_.prober = std::make_shared<rating::RecordedStateProber>();
  auto initial = std::make_shared<StoreSnapshot>();
  if (!options_.store_path.empty()) {
    if (auto text = util::read_file_if_exists(options_.store_path); text && !text->empty()) {
      try {
        *initial = parse_snapshot(json::parse(*text));
      } catch (const json::exception& e) {
        throw Error(ErrorKind::kIo, "corrupt store " + options_.store_path.string() + ": " + e.what());
      }
    }
  }
  current_ = std::move(initial);
}

std::shared_ptr<const StoreSnapshot> Registry::snapshot() const {
  std::lock_guard lock(read_mu_);
  return current_;
}

void Registry::publish(std::shared_ptr<const StoreSnapshot> next) {
  std::lock_guard lock(read_mu_);
  current_ = std::move(next);
}

void Registry::persist(const StoreSnapshot& next) const {
  if (options_.store_path.empty()) return;
  util::write_file_atomic(options_.store_path, to_json(next).dump(2) + "\n");
}

template <typename Mutation>
void Registry::commit(Mutation&& mutate) {
  std::lock_guard lock(write_mu_);
  auto next = std::make_shared<StoreSnapshot>(*snapshot());
  mutate(*next);
  ++next->revision;
  persist(*next);
  publish(std::move(next));
}

bool Registry::check_admin_secret(std::string_view secret) const {
  if (options_.admin_secret.empty() || secret.empty()) return false;
  // Compare digests so timing does not leak a matching prefix.
  return util::sha256_hex(secret) == util::sha256_hex(options_.admin_secret);
}

bool Registry::apply_seed(StoreSnapshot fixture) {
  {
    const auto current = snapshot();
    if (current->revision != 0 || !current->datasets.empty() || !current->tasks.empty()) return false;
  }

  std::vector<Violation> violations;
  for (std::size_t i = 0; i < fixture.tasks.size(); ++i) {
    auto& t = fixture.tasks[i];
    if (t.id.empty()) t.id = new_id("task-");
    for (auto& v : catalog::validate_task(t).violations) {
      violations.push_back({"tasks[" + std::to_string(i) + "]." + v.field, v.message});
    }
  }
  for (auto& d : fixture.datasets) {
    d = with_rating(std::move(d));
    if (d.id.empty()) d.id = new_id("ds-");
  }
  const auto known = task_id_set(fixture);
  for (std::size_t i = 0; i < fixture.datasets.size(); ++i) {
    for (auto& v : catalog::validate_dataset(fixture.datasets[i], known).violations) {
      violations.push_back({"datasets[" + std::to_string(i) + "]." + v.field, v.message});
    }
  }
  if (!violations.empty()) throw Error(ErrorKind::kValidation, "invalid seed fixture", std::move(violations));

  bool applied = false;
  commit([&](StoreSnapshot& next) {
    if (next.revision != 0 || !next.datasets.empty() || !next.tasks.empty()) {
      throw Error(ErrorKind::kConflict, "store changed while seeding");
    }
    StoreSnapshot staged;
    for (const auto& t : fixture.tasks) {
      check_unique_task_name(staged, t);
      staged.tasks.push_back(t);
    }
    for (const auto& d : fixture.datasets) {
      check_unique_dataset_name(staged, d);
      staged.datasets.push_back(d);
    }
    next.tasks = std::move(staged.tasks);
    next.datasets = std::move(staged.datasets);
    applied = true;
  });
  return applied;
}

IssuedToken Registry::issue_token(std::string_view label, std::string_view admin_secret) {
  if (!check_admin_secret(admin_secret)) throw Error(ErrorKind::kAuth, "invalid admin secret");
  IssuedToken issued{util::random_urlsafe(kTokenBytes), std::string(label), options_.clock()};
  commit([&](StoreSnapshot& next) {
    next.tokens.push_back(ApiToken{util::sha256_hex(issued.token), issued.label, issued.issued_at, false});
  });
  return issued;
}

void Registry::revoke_token(std::string_view token, std::string_view admin_secret) {
  if (!check_admin_secret(admin_secret)) throw Error(ErrorKind::kAuth, "invalid admin secret");
  const auto digest = util::sha256_hex(token);
  commit([&](StoreSnapshot& next) {
    const auto it = std::find_if(next.tokens.begin(), next.tokens.end(),
                                 [&](const ApiToken& t) { return t.token_sha256 == digest; });
    if (it == next.tokens.end()) throw Error(ErrorKind::kNotFound, "unknown token");
    it->revoked = true;
  });
}

void Registry::authorize(std::string_view bearer) const {
  if (bearer.empty()) throw Error(ErrorKind::kAuth, "missing bearer token");
  const auto digest = util::sha256_hex(bearer);
  const auto s = snapshot();
  const auto it = std::find_if(s->tokens.begin(), s->tokens.end(),
                               [&](const ApiToken& t) { return t.token_sha256 == digest; });
  if (it == s->tokens.end()) throw Error(ErrorKind::kAuth, "unknown bearer token");
  if (it->revoked) throw Error(ErrorKind::kAuth, "revoked bearer token");
}

std::vector<NlpTask> Registry::list_tasks() const {
  auto tasks = snapshot()->tasks;
  std::sort(tasks.begin(), tasks.end(), [](const NlpTask& a, const NlpTask& b) {
    return util::casefold(a.name) < util::casefold(b.name);
  });
  return tasks;
}

NlpTask Registry::get_task(std::string_view id) const {
  const auto s = snapshot();
  if (const auto* t = s->find_task(id)) return *t;
  throw Error(ErrorKind::kNotFound, "no task with id '" + std::string(id) + "'");
}

NlpTask Registry::create_task(NlpTask task, std::string_view bearer) {
  authorize(bearer);
  task.id.clear();
  throw_if_invalid(catalog::validate_task(task), "task");
  commit([&](StoreSnapshot& next) {
    check_unique_task_name(next, task);
    task.id = new_id("task-");
    next.tasks.push_back(task);
  });
  return task;
}

NlpTask Registry::update_task(std::string_view id, NlpTask task, std::string_view bearer) {
  authorize(bearer);
  task.id = std::string(id);
  throw_if_invalid(catalog::validate_task(task), "task");
  commit([&](StoreSnapshot& next) {
    auto it = std::find_if(next.tasks.begin(), next.tasks.end(), [&](const NlpTask& t) { return t.id == id; });
    if (it == next.tasks.end()) throw Error(ErrorKind::kNotFound, "no task with id '" + std::string(id) + "'");
    check_unique_task_name(next, task, id);
    *it = task;
  });
  return task;
}

void Registry::delete_task(std::string_view id, std::string_view bearer) {
  authorize(bearer);
  commit([&](StoreSnapshot& next) {
    auto it = std::find_if(next.tasks.begin(), next.tasks.end(), [&](const NlpTask& t) { return t.id == id; });
    if (it == next.tasks.end()) throw Error(ErrorKind::kNotFound, "no task with id '" + std::string(id) + "'");
    for (const auto& d : next.datasets) {
      if (std::find(d.task_ids.begin(), d.task_ids.end(), id) != d.task_ids.end()) {
        throw Error(ErrorKind::kConflict, "task is referenced by dataset '" + d.english_name + "'");
      }
    }
    next.tasks.erase(it);
  });
}

std::vector<Dataset> Registry::list_datasets(const DatasetFilter& filter) const {
  return filter_datasets(*snapshot(), filter);
}

Dataset Registry::get_dataset(std::string_view id) const {
  const auto s = snapshot();
  if (const auto* d = s->find_dataset(id)) return *d;
  throw Error(ErrorKind::kNotFound, "no dataset with id '" + std::string(id) + "'");
}

Dataset Registry::get_dataset_by_name(std::string_view english_name) const {
  const auto s = snapshot();
  for (const auto& d : s->datasets) {
    if (util::iequals(d.english_name, english_name)) return d;
  }
  throw Error(ErrorKind::kNotFound, "no dataset named '" + std::string(english_name) + "'");
}

Dataset Registry::with_rating(Dataset d) const {
  d.policy.reset();
  if (d.preservation && d.preservation->source == catalog::RatingSource::kSubmitted) {
    const int score = d.preservation->score;
    if (score >= catalog::kMinRating && score <= catalog::kMaxRating) {
      d.policy = catalog::derive_storage_policy(*d.preservation);
    }
    return d;
  }
  auto report = rating::rate(d, *options_.prober, options_.clock(), options_.rating_config);
  if (options_.prober->observes_network()) rating::record_probes(d, report.probes);
  d.preservation = report.rating;
  d.policy = report.policy;
  return d;
}

Dataset Registry::create_dataset(Dataset dataset, std::string_view bearer) {
  authorize(bearer);
  dataset.id.clear();
  dataset = with_rating(std::move(dataset));
  commit([&](StoreSnapshot& next) {
    throw_if_invalid(catalog::validate_dataset(dataset, task_id_set(next)), "dataset");
    check_unique_dataset_name(next, dataset);
    dataset.id = new_id("ds-");
    next.datasets.push_back(dataset);
  });
  return dataset;
}

Dataset Registry::update_dataset(std::string_view id, Dataset dataset, std::string_view bearer,
                                 std::optional<std::uint64_t> expected_revision) {
  authorize(bearer);
  (void)get_dataset(id);  // fail fast before probing
  dataset.id = std::string(id);
  dataset = with_rating(std::move(dataset));
  commit([&](StoreSnapshot& next) {
    check_expected_revision(next, expected_revision);
    auto it = std::find_if(next.datasets.begin(), next.datasets.end(), [&](const Dataset& d) { return d.id == id; });
    if (it == next.datasets.end()) throw Error(ErrorKind::kNotFound, "no dataset with id '" + std::string(id) + "'");
    throw_if_invalid(catalog::validate_dataset(dataset, task_id_set(next)), "dataset");
    check_unique_dataset_name(next, dataset, id);
    *it = dataset;
  });
  return dataset;
}

void Registry::delete_dataset(std::string_view id, std::string_view bearer,
                              std::optional<std::uint64_t> expected_revision) {
  authorize(bearer);
  commit([&](StoreSnapshot& next) {
    check_expected_revision(next, expected_revision);
    auto it = std::find_if(next.datasets.begin(), next.datasets.end(), [&](const Dataset& d) { return d.id == id; });
    if (it == next.datasets.end()) throw Error(ErrorKind::kNotFound, "no dataset with id '" + std::string(id) + "'");
    next.datasets.erase(it);
  });
}

}  // namespace resreg::service
