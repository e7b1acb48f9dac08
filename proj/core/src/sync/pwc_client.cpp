#include "net/api.hpp"
#include "resreg/error.hpp"
#include "resreg/net/http.hpp"
#include "resreg/sync/external_catalog.hpp"
#include "resreg/util/strings.hpp"

namespace resreg::sync {

using nlohmann::json;

void ExternalCredentials::validate() const {
  if (username.empty() || password.empty()) {
    throw Error(ErrorKind::kDomain, "external credentials need a username and a password");
  }
}

std::string ExternalCredentials::describe() const { return "ExternalCredentials{username=" + username + "}"; }

namespace {

// The fake catalog answers validation failures with {"error": "..."}.
[[noreturn]] void throw_remote(const net::HttpResponse& res, const std::string& context) {
  if (res.status == 400 || res.status == 422) {
    std::string remote = res.body;
    try {
      const auto body = json::parse(res.body);
      if (body.is_object() && body.contains("error")) remote = body["error"].get<std::string>();
    } catch (const json::exception&) {
    }
    throw Error(ErrorKind::kValidation, context + ": rejected by remote catalog: " + remote);
  }
  net::throw_for_status(res, context);
}

RemoteDataset remote_from_json(const json& j) {
  if (!j.is_object() || !j.contains("id")) throw Error(ErrorKind::kProtocol, "remote dataset without id");
  return RemoteDataset{j["id"].get<std::string>(), payload_from_json(j)};
}

std::string session_cookie(const net::HttpResponse& res) {
  for (const auto& [k, v] : res.headers) {
    if (!util::iequals(k, "Set-Cookie")) continue;
    // keep "name=value", drop attributes
    return v.substr(0, v.find(';'));
  }
  return {};
}

}  // namespace

PwcHttpClient::PwcHttpClient(std::string endpoint, std::string cookie, RetryPolicy retry,
                             std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), cookie_(std::move(cookie)), retry_(retry), timeout_(timeout) {}

PwcHttpClient PwcHttpClient::login(const ExternalCredentials& credentials, std::string endpoint,
                                   RetryPolicy retry, std::chrono::milliseconds timeout) {
  credentials.validate();
  while (!endpoint.empty() && endpoint.back() == '/') endpoint.pop_back();

  net::HttpRequest req;
  req.method = "POST";
  req.url = endpoint + "/login";
  req.timeout = timeout;
  req.content_type = "application/x-www-form-urlencoded";
  req.body = net::form_encode({{"username", credentials.username}, {"password", credentials.password}});

  const auto res = with_retry(retry, [&] { return net::send(req); });
  if (res.status == 401 || res.status == 403) {
    throw Error(ErrorKind::kAuth, "login to " + endpoint + " rejected for user " + credentials.username);
  }
  if (res.status != 200) net::throw_for_status(res, "login to " + endpoint);
  auto cookie = session_cookie(res);
  if (cookie.empty()) throw Error(ErrorKind::kProtocol, "login to " + endpoint + " returned no session cookie");
  return PwcHttpClient(std::move(endpoint), std::move(cookie), retry, timeout);
}

std::vector<RemoteDataset> PwcHttpClient::find_by_name(const std::string& name) {
  net::HttpRequest req;
  req.url = endpoint_ + "/api/datasets?name=" + util::url_encode(name);
  req.timeout = timeout_;
  req.headers.emplace_back("Cookie", cookie_);
  const auto res = with_retry(retry_, [&] { return net::send(req); });
  if (res.status != 200) throw_remote(res, "search " + endpoint_);
  const auto body = net::json_body(res, "search " + endpoint_);
  std::vector<RemoteDataset> out;
  for (const auto& item : body) out.push_back(remote_from_json(item));
  return out;
}

RemoteDataset PwcHttpClient::create(const ExternalDatasetPayload& payload) {
  net::HttpRequest req;
  req.method = "POST";
  req.url = endpoint_ + "/api/datasets";
  req.timeout = timeout_;
  req.body = json(payload).dump();
  req.headers.emplace_back("Cookie", cookie_);
  const auto res = with_retry(retry_, [&] { return net::send(req); });
  if (res.status != 201 && res.status != 200) throw_remote(res, "create on " + endpoint_);
  return remote_from_json(net::json_body(res, "create on " + endpoint_));
}

RemoteDataset PwcHttpClient::update(const std::string& external_id, const ExternalDatasetPayload& payload) {
  net::HttpRequest req;
  req.method = "PATCH";
  req.url = endpoint_ + "/api/datasets/" + util::url_encode(external_id);
  req.timeout = timeout_;
  req.body = json(payload).dump();
  req.headers.emplace_back("Cookie", cookie_);
  const auto res = with_retry(retry_, [&] { return net::send(req); });
  if (res.status != 200) throw_remote(res, "update on " + endpoint_);
  return remote_from_json(net::json_body(res, "update on " + endpoint_));
}

}  // namespace resreg::sync
