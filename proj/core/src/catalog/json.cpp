#include "resreg/catalog/json.hpp"

#include "resreg/error.hpp"

namespace resreg::catalog {

using nlohmann::json;

void to_json(json& j, const NlpTask& t) {
  j = json::object();
  if (!t.id.empty()) j["id"] = t.id;
  j["name"] = t.name;
  j["acronym"] = t.acronym;
  j["papers_with_code_ids"] = t.papers_with_code_ids;
}

void to_json(json& j, const ResourceLink& l) {
  j = json{{"kind", to_string(l.kind)}, {"url", l.url}, {"alive", to_string(l.alive)}};
}

void to_json(json& j, const PreservationRating& r) {
  j = json{{"score", r.score}, {"source", to_string(r.source)}};
}

void to_json(json& j, const Dataset& d) {
  j = json::object();
  if (!d.id.empty()) j["id"] = d.id;
  j["english_name"] = d.english_name;
  if (d.native_name) j["native_name"] = *d.native_name;
  if (d.description) j["description"] = *d.description;
  j["task_ids"] = d.task_ids;
  auto varieties = json::array();
  for (auto v : d.varieties) varieties.push_back(to_string(v));
  j["varieties"] = std::move(varieties);
  j["links"] = d.links;
  if (d.license) j["license"] = *d.license;
  if (d.year) j["year"] = *d.year;
  if (d.preservation) j["preservation"] = *d.preservation;
  if (d.policy) j["policy"] = to_string(*d.policy);
  if (d.archive_path) j["archive_path"] = *d.archive_path;
}

namespace {

// Accumulates structural problems so one response can list them all.
class FieldReader {
 public:
  explicit FieldReader(const json& obj) : obj_(obj) {}

  const json* field(const char* key) const {
    const auto it = obj_.find(key);
    if (it == obj_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  std::string string(const char* key, const std::string& path) {
    const json* v = field(key);
    if (!v) return {};
    if (!v->is_string()) {
      fail(path, "must be a string");
      return {};
    }
    return v->get<std::string>();
  }

  std::optional<std::string> optional_string(const char* key, const std::string& path) {
    const json* v = field(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      fail(path, "must be a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::vector<std::string> string_list(const char* key, const std::string& path) {
    std::vector<std::string> out;
    const json* v = field(key);
    if (!v) return out;
    if (!v->is_array()) {
      fail(path, "must be a list of strings");
      return out;
    }
    for (std::size_t i = 0; i < v->size(); ++i) {
      const auto& item = (*v)[i];
      if (!item.is_string()) {
        fail(path + "[" + std::to_string(i) + "]", "must be a string");
        continue;
      }
      out.push_back(item.get<std::string>());
    }
    return out;
  }

  void fail(std::string path, std::string message) {
    violations.push_back({std::move(path), std::move(message)});
  }

  std::vector<Violation> violations;

 private:
  const json& obj_;
};

void require_object(const json& j, const char* what) {
  if (!j.is_object()) throw Error(ErrorKind::kBadRequest, std::string(what) + " must be a JSON object");
}

}  // namespace

NlpTask parse_task(const json& j) {
  require_object(j, "task");
  FieldReader r(j);
  NlpTask t;
  t.id = r.string("id", "id");
  t.name = r.string("name", "name");
  t.acronym = r.string("acronym", "acronym");
  t.papers_with_code_ids = r.string_list("papers_with_code_ids", "papers_with_code_ids");
  if (!r.violations.empty()) {
    throw Error(ErrorKind::kValidation, "malformed task", std::move(r.violations));
  }
  return t;
}

Dataset parse_dataset(const json& j) {
  require_object(j, "dataset");
  FieldReader r(j);
  Dataset d;
  d.id = r.string("id", "id");
  d.english_name = r.string("english_name", "english_name");
  d.native_name = r.optional_string("native_name", "native_name");
  d.description = r.optional_string("description", "description");
  d.task_ids = r.string_list("task_ids", "task_ids");
  d.license = r.optional_string("license", "license");
  d.archive_path = r.optional_string("archive_path", "archive_path");

  for (const auto& tag : r.string_list("varieties", "varieties")) {
    if (auto v = parse_variety(tag)) {
      d.varieties.insert(*v);
    } else {
      r.fail("varieties", "unknown language variety '" + tag + "'");
    }
  }

  if (const json* links = r.field("links")) {
    if (!links->is_array()) {
      r.fail("links", "must be a list");
    } else {
      for (std::size_t i = 0; i < links->size(); ++i) {
        const auto& item = (*links)[i];
        const std::string path = "links[" + std::to_string(i) + "]";
        if (!item.is_object()) {
          r.fail(path, "must be an object");
          continue;
        }
        FieldReader lr(item);
        ResourceLink link;
        const auto kind = lr.string("kind", path + ".kind");
        if (auto k = parse_link_kind(kind)) {
          link.kind = *k;
        } else {
          lr.fail(path + ".kind", "unknown link kind '" + kind + "'");
        }
        link.url = lr.string("url", path + ".url");
        if (auto alive = lr.optional_string("alive", path + ".alive")) {
          if (auto a = parse_liveness(*alive)) {
            link.alive = *a;
          } else {
            lr.fail(path + ".alive", "unknown liveness '" + *alive + "'");
          }
        }
        for (auto& v : lr.violations) r.violations.push_back(std::move(v));
        d.links.push_back(std::move(link));
      }
    }
  }

  if (const json* year = r.field("year")) {
    if (year->is_number_integer()) {
      d.year = year->get<int>();
    } else {
      r.fail("year", "must be an integer");
    }
  }

  if (const json* p = r.field("preservation")) {
    if (!p->is_object()) {
      r.fail("preservation", "must be an object");
    } else {
      PreservationRating rating;
      const auto score = p->find("score");
      if (score == p->end() || !score->is_number_integer()) {
        r.fail("preservation.score", "must be an integer");
      } else {
        rating.score = score->get<int>();
      }
      FieldReader pr(*p);
      const auto source = pr.string("source", "preservation.source");
      if (auto s = parse_rating_source(source)) {
        rating.source = *s;
      } else if (pr.violations.empty()) {
        pr.fail("preservation.source", "unknown rating source '" + source + "'");
      }
      for (auto& v : pr.violations) r.violations.push_back(std::move(v));
      d.preservation = rating;
    }
  }

  if (auto policy = r.optional_string("policy", "policy")) {
    if (auto p = parse_storage_policy(*policy)) {
      d.policy = *p;
    } else {
      r.fail("policy", "unknown storage policy '" + *policy + "'");
    }
  }

  if (!r.violations.empty()) {
    throw Error(ErrorKind::kValidation, "malformed dataset", std::move(r.violations));
  }
  return d;
}

}  // namespace resreg::catalog
