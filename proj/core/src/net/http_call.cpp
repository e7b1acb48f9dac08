#include "net/httplib_config.hpp"
#include "resreg/error.hpp"
#include "resreg/net/http.hpp"
#include "resreg/util/strings.hpp"
#include "resreg/util/url.hpp"

namespace resreg::net {

std::optional<std::string> HttpResponse::header(std::string_view name) const {
  for (const auto& [k, v] : headers) {
    if (util::iequals(k, name)) return v;
  }
  return std::nullopt;
}

std::string form_encode(const std::vector<std::pair<std::string, std::string>>& fields) {
  std::string out;
  for (const auto& [k, v] : fields) {
    if (!out.empty()) out.push_back('&');
    out += util::url_encode(k);
    out.push_back('=');
    out += util::url_encode(v);
  }
  return out;
}

HttpResponse send(const HttpRequest& request) {
  const auto url = util::parse_http_url(request.url);
  if (!url) throw Error(ErrorKind::kBadRequest, "malformed URL: " + request.url);

  httplib::Client client(url->origin());
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(request.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(request.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  client.set_follow_location(request.follow_redirects);
  client.set_keep_alive(false);
  client.enable_server_certificate_verification(false);

  httplib::Request req;
  req.method = request.method;
  req.path = url->target;
  for (const auto& [k, v] : request.headers) req.headers.emplace(k, v);
  if (!request.body.empty() || request.method == "POST" || request.method == "PUT" ||
      request.method == "PATCH") {
    req.body = request.body;
    req.headers.emplace("Content-Type",
                        request.content_type.empty() ? "application/json" : request.content_type);
  }

  httplib::Response res;
  httplib::Error err = httplib::Error::Success;
  if (!client.send(req, res, err)) {
    throw Error(ErrorKind::kTransport,
                request.method + " " + url->origin() + url->target + ": " + httplib::to_string(err));
  }

  HttpResponse out;
  out.status = res.status;
  out.body = std::move(res.body);
  for (auto& [k, v] : res.headers) out.headers.emplace(k, v);
  return out;
}

}  // namespace resreg::net

#include "net/api.hpp"

namespace resreg::net {

void throw_for_status(const HttpResponse& res, std::string_view context) {
  std::string message = std::string(context) + ": HTTP " + std::to_string(res.status);
  std::vector<Violation> violations;
  try {
    const auto body = nlohmann::json::parse(res.body);
    if (body.is_object()) {
      if (auto it = body.find("message"); it != body.end() && it->is_string()) {
        message += ": " + it->get<std::string>();
      } else if (auto err = body.find("error"); err != body.end() && err->is_string()) {
        message += ": " + err->get<std::string>();
      }
      if (auto it = body.find("violations"); it != body.end() && it->is_array()) {
        for (const auto& v : *it) {
          violations.push_back({v.value("field", ""), v.value("message", "")});
        }
      }
    }
  } catch (const nlohmann::json::exception&) {
  }

  switch (res.status) {
    case 400: throw Error(ErrorKind::kBadRequest, message, std::move(violations));
    case 401:
    case 403: throw Error(ErrorKind::kAuth, message);
    case 404: throw Error(ErrorKind::kNotFound, message);
    case 409: throw Error(ErrorKind::kConflict, message);
    case 422: throw Error(ErrorKind::kValidation, message, std::move(violations));
    default: throw Error(ErrorKind::kProtocol, message, res.status);
  }
}

nlohmann::json json_body(const HttpResponse& res, std::string_view context) {
  try {
    return nlohmann::json::parse(res.body);
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::kProtocol, std::string(context) + ": response is not JSON", res.status);
  }
}

}  // namespace resreg::net
