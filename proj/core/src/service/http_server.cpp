#include "resreg/service/http_server.hpp"

#include <charconv>
#include <thread>

#include "net/httplib_config.hpp"
#include "resreg/catalog/json.hpp"
#include "resreg/error.hpp"

namespace resreg::service {

using nlohmann::json;

namespace {

constexpr const char* kJson = "application/json";

json error_body(const Error& e) {
  json body{{"error", to_string(e.kind())}, {"message", e.what()}};
  auto violations = json::array();
  for (const auto& v : e.violations()) violations.push_back({{"field", v.field}, {"message", v.message}});
  body["violations"] = std::move(violations);
  return body;
}

std::string bearer_of(const httplib::Request& req) {
  const auto header = req.get_header_value("Authorization");
  constexpr std::string_view kPrefix = "Bearer ";
  if (header.size() <= kPrefix.size() || header.compare(0, kPrefix.size(), kPrefix) != 0) return {};
  return header.substr(kPrefix.size());
}

std::optional<std::uint64_t> expected_revision_of(const httplib::Request& req) {
  if (!req.has_header("X-Expected-Revision")) return std::nullopt;
  const auto value = req.get_header_value("X-Expected-Revision");
  std::uint64_t rev = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), rev);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw Error(ErrorKind::kBadRequest, "X-Expected-Revision must be a non-negative integer");
  }
  return rev;
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::exception&) {
    throw Error(ErrorKind::kBadRequest, "request body is not valid JSON");
  }
}

std::string string_field(const json& body, const char* key) {
  const auto it = body.find(key);
  if (it == body.end() || !it->is_string()) return {};
  return it->get<std::string>();
}

}  // namespace

struct HttpServer::Impl {
  explicit Impl(Registry& r) : registry(r) {}

  Registry& registry;
  httplib::Server server;
  std::string host = "127.0.0.1";
  int port = 0;
  std::thread thread;

  void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_header("X-Store-Revision", std::to_string(registry.revision()));
    res.set_content(body.dump(), kJson);
  }

  // Runs a handler and turns library errors into the JSON error contract.
  template <typename Handler>
  httplib::Server::Handler wrap(Handler&& handler) {
    return [this, handler = std::forward<Handler>(handler)](const httplib::Request& req, httplib::Response& res) {
      try {
        handler(req, res);
      } catch (const Error& e) {
        reply(res, e.http_status(), error_body(e));
      } catch (const json::exception& e) {
        reply(res, 400, error_body(Error(ErrorKind::kBadRequest, e.what())));
      } catch (const std::exception& e) {
        reply(res, 500, json{{"error", "internal"}, {"message", e.what()}, {"violations", json::array()}});
      }
    };
  }

  void routes() {
    server.Post("/api/tokens", wrap([this](const auto& req, auto& res) {
      const auto body = parse_body(req);
      if (!body.is_object()) throw Error(ErrorKind::kBadRequest, "body must be an object");
      const auto label = string_field(body, "label");
      if (label.empty()) {
        throw Error(ErrorKind::kValidation, "invalid token request", {{"label", "must not be empty"}});
      }
      const auto issued = registry.issue_token(label, string_field(body, "admin_secret"));
      reply(res, 201, json{{"token", issued.token},
                           {"label", issued.label},
                           {"issued_at", util::format_utc(issued.issued_at)},
                           {"revoked", false}});
    }));

    server.Post("/api/tokens/revoke", wrap([this](const auto& req, auto& res) {
      const auto body = parse_body(req);
      if (!body.is_object()) throw Error(ErrorKind::kBadRequest, "body must be an object");
      registry.revoke_token(string_field(body, "token"), string_field(body, "admin_secret"));
      reply(res, 200, json{{"revoked", true}});
    }));

    server.Get("/api/status", wrap([this](const auto&, auto& res) {
      const auto s = registry.snapshot();
      reply(res, 200, json{{"revision", s->revision},
                           {"datasets", s->datasets.size()},
                           {"tasks", s->tasks.size()}});
    }));

    server.Get("/api/nlp-tasks", wrap([this](const auto&, auto& res) {
      reply(res, 200, json(registry.list_tasks()));
    }));
    server.Post("/api/nlp-tasks", wrap([this](const auto& req, auto& res) {
      const auto token = bearer_of(req);
      registry.authorize(token);
      auto created = registry.create_task(catalog::parse_task(parse_body(req)), token);
      reply(res, 201, json(created));
    }));
    server.Get(R"(/api/nlp-tasks/([^/]+))", wrap([this](const auto& req, auto& res) {
      reply(res, 200, json(registry.get_task(req.matches[1].str())));
    }));
    server.Put(R"(/api/nlp-tasks/([^/]+))", wrap([this](const auto& req, auto& res) {
      const auto token = bearer_of(req);
      registry.authorize(token);
      auto updated = registry.update_task(req.matches[1].str(), catalog::parse_task(parse_body(req)), token);
      reply(res, 200, json(updated));
    }));
    server.Delete(R"(/api/nlp-tasks/([^/]+))", wrap([this](const auto& req, auto& res) {
      registry.delete_task(req.matches[1].str(), bearer_of(req));
      res.status = 204;
      res.set_header("X-Store-Revision", std::to_string(registry.revision()));
    }));

    server.Get("/api/datasets", wrap([this](const auto& req, auto& res) {
      DatasetFilter filter;
      if (req.has_param("task")) filter.task = req.get_param_value("task");
      if (req.has_param("variety")) {
        const auto v = catalog::parse_variety(req.get_param_value("variety"));
        if (!v) throw Error(ErrorKind::kBadRequest, "unknown variety filter");
        filter.variety = *v;
      }
      if (req.has_param("policy")) {
        const auto p = catalog::parse_storage_policy(req.get_param_value("policy"));
        if (!p) throw Error(ErrorKind::kBadRequest, "unknown policy filter");
        filter.policy = *p;
      }
      reply(res, 200, json(registry.list_datasets(filter)));
    }));
    server.Post("/api/datasets", wrap([this](const auto& req, auto& res) {
      const auto token = bearer_of(req);
      registry.authorize(token);
      auto created = registry.create_dataset(catalog::parse_dataset(parse_body(req)), token);
      reply(res, 201, json(created));
    }));
    server.Get(R"(/api/datasets/by-name/(.+))", wrap([this](const auto& req, auto& res) {
      reply(res, 200, json(registry.get_dataset_by_name(req.matches[1].str())));
    }));
    server.Get(R"(/api/datasets/([^/]+))", wrap([this](const auto& req, auto& res) {
      reply(res, 200, json(registry.get_dataset(req.matches[1].str())));
    }));
    server.Put(R"(/api/datasets/([^/]+))", wrap([this](const auto& req, auto& res) {
      const auto token = bearer_of(req);
      registry.authorize(token);
      const auto expected = expected_revision_of(req);
      auto updated =
          registry.update_dataset(req.matches[1].str(), catalog::parse_dataset(parse_body(req)), token, expected);
      reply(res, 200, json(updated));
    }));
    server.Delete(R"(/api/datasets/([^/]+))", wrap([this](const auto& req, auto& res) {
      const auto token = bearer_of(req);
      registry.authorize(token);
      registry.delete_dataset(req.matches[1].str(), token, expected_revision_of(req));
      res.status = 204;
      res.set_header("X-Store-Revision", std::to_string(registry.revision()));
    }));
  }
};

HttpServer::HttpServer(Registry& registry) : impl_(std::make_unique<Impl>(registry)) {
  impl_->server.set_read_timeout(10, 0);
  impl_->server.set_write_timeout(10, 0);
  impl_->routes();
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  impl_->host = host;
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port(host);
  } else {
    impl_->port = impl_->server.bind_to_port(host, port) ? port : -1;
  }
  if (impl_->port < 0) throw Error(ErrorKind::kIo, "cannot bind " + host + ":" + std::to_string(port));
  return impl_->port;
}

void HttpServer::serve() { impl_->server.listen_after_bind(); }

int HttpServer::start(const std::string& host, int port) {
  const int bound = bind(host, port);
  impl_->thread = std::thread([this] { serve(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::string HttpServer::base_url() const {
  return "http://" + impl_->host + ":" + std::to_string(impl_->port);
}

}  // namespace resreg::service
