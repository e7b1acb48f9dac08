#include "resreg/admin/admin_client.hpp"

#include "net/api.hpp"
#include "resreg/catalog/json.hpp"
#include "resreg/error.hpp"
#include "resreg/net/http.hpp"
#include "resreg/util/strings.hpp"

namespace resreg::admin {

using nlohmann::json;

AdminSession::AdminSession(std::string base_url, std::string bearer_token)
    : base_url_(std::move(base_url)), bearer_token_(std::move(bearer_token)) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

std::string AdminSession::describe() const {
  return "AdminSession{url=" + base_url_ + ", token=" + (bearer_token_.empty() ? "<none>" : "<redacted>") + "}";
}

std::ostream& operator<<(std::ostream& os, const AdminSession& session) { return os << session.describe(); }

namespace {

struct Call {
  const AdminSession& session;
  std::chrono::milliseconds timeout;

  net::HttpResponse send(std::string method, const std::string& path, const std::string& body = {},
                         std::optional<std::uint64_t> expected_revision = std::nullopt) const {
    net::HttpRequest req;
    req.method = std::move(method);
    req.url = session.base_url() + path;
    req.timeout = timeout;
    req.body = body;
    if (!session.bearer_token().empty()) {
      req.headers.emplace_back("Authorization", "Bearer " + session.bearer_token());
    }
    if (expected_revision) req.headers.emplace_back("X-Expected-Revision", std::to_string(*expected_revision));
    return net::send(req);
  }

  json expect_json(const net::HttpResponse& res, int status, const std::string& context) const {
    if (res.status != status) net::throw_for_status(res, context);
    return net::json_body(res, context);
  }
};

std::string query_of(const service::DatasetFilter& f) {
  std::vector<std::pair<std::string, std::string>> params;
  if (f.task) params.emplace_back("task", *f.task);
  if (f.variety) params.emplace_back("variety", std::string(catalog::to_string(*f.variety)));
  if (f.policy) params.emplace_back("policy", std::string(catalog::to_string(*f.policy)));
  return params.empty() ? std::string() : "?" + net::form_encode(params);
}

}  // namespace

AdminClient::AdminClient(AdminSession session, std::chrono::milliseconds timeout)
    : session_(std::move(session)), timeout_(timeout) {}

catalog::NlpTask AdminClient::insert_nlp_task(std::string name, std::string acronym,
                                              std::vector<std::string> papers_with_code_ids) const {
  return insert_nlp_task(catalog::NlpTask{{}, std::move(name), std::move(acronym), std::move(papers_with_code_ids)});
}

catalog::NlpTask AdminClient::insert_nlp_task(const catalog::NlpTask& task) const {
  Call call{session_, timeout_};
  const auto res = call.send("POST", "/api/nlp-tasks", json(task).dump());
  return catalog::parse_task(call.expect_json(res, 201, "insert task"));
}

catalog::NlpTask AdminClient::update_nlp_task(std::string_view id, const catalog::NlpTask& task) const {
  Call call{session_, timeout_};
  const auto res = call.send("PUT", "/api/nlp-tasks/" + util::url_encode(id), json(task).dump());
  return catalog::parse_task(call.expect_json(res, 200, "update task"));
}

void AdminClient::delete_nlp_task(std::string_view id) const {
  Call call{session_, timeout_};
  const auto res = call.send("DELETE", "/api/nlp-tasks/" + util::url_encode(id));
  if (res.status != 204 && res.status != 200) net::throw_for_status(res, "delete task");
}

std::vector<catalog::NlpTask> AdminClient::list_nlp_tasks() const {
  Call call{session_, timeout_};
  const auto body = call.expect_json(call.send("GET", "/api/nlp-tasks"), 200, "list tasks");
  std::vector<catalog::NlpTask> out;
  for (const auto& item : body) out.push_back(catalog::parse_task(item));
  return out;
}

catalog::Dataset AdminClient::insert_dataset(const catalog::Dataset& dataset) const {
  Call call{session_, timeout_};
  const auto res = call.send("POST", "/api/datasets", json(dataset).dump());
  return catalog::parse_dataset(call.expect_json(res, 201, "insert dataset"));
}

catalog::Dataset AdminClient::update_dataset(std::string_view id, const catalog::Dataset& dataset,
                                             std::optional<std::uint64_t> expected_revision) const {
  Call call{session_, timeout_};
  const auto res = call.send("PUT", "/api/datasets/" + util::url_encode(id), json(dataset).dump(), expected_revision);
  return catalog::parse_dataset(call.expect_json(res, 200, "update dataset"));
}

void AdminClient::delete_dataset(std::string_view id, std::optional<std::uint64_t> expected_revision) const {
  Call call{session_, timeout_};
  const auto res = call.send("DELETE", "/api/datasets/" + util::url_encode(id), {}, expected_revision);
  if (res.status != 204 && res.status != 200) net::throw_for_status(res, "delete dataset");
}

catalog::Dataset AdminClient::get_dataset(std::string_view id) const {
  Call call{session_, timeout_};
  const auto res = call.send("GET", "/api/datasets/" + util::url_encode(id));
  return catalog::parse_dataset(call.expect_json(res, 200, "get dataset"));
}

catalog::Dataset AdminClient::get_dataset_by_name(std::string_view english_name) const {
  Call call{session_, timeout_};
  const auto res = call.send("GET", "/api/datasets/by-name/" + util::url_encode(english_name));
  return catalog::parse_dataset(call.expect_json(res, 200, "get dataset"));
}

std::vector<catalog::Dataset> AdminClient::list_datasets(const service::DatasetFilter& filter) const {
  Call call{session_, timeout_};
  const auto body = call.expect_json(call.send("GET", "/api/datasets" + query_of(filter)), 200, "list datasets");
  std::vector<catalog::Dataset> out;
  for (const auto& item : body) out.push_back(catalog::parse_dataset(item));
  return out;
}

service::IssuedToken issue_token(const std::string& base_url, const std::string& label,
                                 const std::string& admin_secret) {
  AdminSession anonymous(base_url, "");
  Call call{anonymous, std::chrono::seconds(30)};
  const auto res =
      call.send("POST", "/api/tokens", json{{"label", label}, {"admin_secret", admin_secret}}.dump());
  const auto body = call.expect_json(res, 201, "issue token");
  service::IssuedToken issued;
  issued.token = body.at("token").get<std::string>();
  issued.label = body.value("label", label);
  if (auto ts = util::parse_utc(body.value("issued_at", ""))) issued.issued_at = *ts;
  return issued;
}

void revoke_token(const std::string& base_url, const std::string& token, const std::string& admin_secret) {
  AdminSession anonymous(base_url, "");
  Call call{anonymous, std::chrono::seconds(30)};
  const auto res =
      call.send("POST", "/api/tokens/revoke", json{{"token", token}, {"admin_secret", admin_secret}}.dump());
  if (res.status != 200) net::throw_for_status(res, "revoke token");
}

rating::RatingReport rate_dataset(const catalog::Dataset& dataset, const RateOptions& options) {
  if (options.offline) {
    return rating::rate(dataset, rating::RecordedStateProber{}, util::now_utc(), options.config);
  }
  return rating::rate(dataset, rating::HttpLinkProber{options.probe}, util::now_utc(), options.config);
}

}  // namespace resreg::admin
