#include "resreg/sync/fake_pwc_server.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "net/httplib_config.hpp"
#include "resreg/error.hpp"
#include "resreg/util/crypto.hpp"
#include "resreg/util/url.hpp"

namespace resreg::sync {

using nlohmann::json;

struct FakePwcServer::Impl {
  std::string username;
  std::string password;
  httplib::Server server;
  std::thread thread;
  std::string host = "127.0.0.1";
  int port = 0;

  mutable std::mutex mu;
  std::set<std::string> sessions;
  std::map<std::string, ExternalDatasetPayload> records;  // slug -> payload
  std::vector<std::string> order;
  std::vector<RecordedCall> calls;

  std::string slug_for(const std::string& name) const {
    std::string slug;
    bool dash = false;
    for (unsigned char c : name) {
      if (std::isalnum(c)) {
        slug.push_back(static_cast<char>(std::tolower(c)));
        dash = false;
      } else if (!dash && !slug.empty()) {
        slug.push_back('-');
        dash = true;
      }
    }
    while (!slug.empty() && slug.back() == '-') slug.pop_back();
    if (slug.empty()) slug = "dataset";
    std::string candidate = slug;
    for (int n = 2; records.contains(candidate); ++n) candidate = slug + "-" + std::to_string(n);
    return candidate;
  }

  std::optional<std::string> reject_reason(const ExternalDatasetPayload& p) const {
    if (p.name.empty()) return "name is required";
    if (p.url && !util::parse_http_url(*p.url)) return "url must be an http(s) URL";
    return std::nullopt;
  }

  RemoteDataset insert_locked(const ExternalDatasetPayload& payload) {
    const auto slug = slug_for(payload.name);
    records[slug] = payload;
    order.push_back(slug);
    return {slug, payload};
  }

  bool authenticated(const httplib::Request& req) const {
    const auto cookie = req.get_header_value("Cookie");
    for (std::size_t pos = 0; pos < cookie.size();) {
      auto end = cookie.find(';', pos);
      if (end == std::string::npos) end = cookie.size();
      auto part = cookie.substr(pos, end - pos);
      while (!part.empty() && part.front() == ' ') part.erase(0, 1);
      if (part.rfind("session=", 0) == 0 && sessions.contains(part.substr(8))) return true;
      pos = end + 1;
    }
    return false;
  }

  static json remote_json(const std::string& slug, const ExternalDatasetPayload& p) {
    json j = p;
    j["id"] = slug;
    return j;
  }

  static void send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  void routes() {
    server.set_post_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
      if (req.path == "/debug/calls") return;
      std::lock_guard lock(mu);
      calls.push_back({req.method, req.path, res.status});
    });

    server.Post("/login", [this](const httplib::Request& req, httplib::Response& res) {
      const auto user = req.get_param_value("username");
      const auto pass = req.get_param_value("password");
      if (user != username || pass != password) {
        send(res, 401, json{{"error", "invalid credentials"}});
        return;
      }
      const auto session = util::random_hex(16);
      {
        std::lock_guard lock(mu);
        sessions.insert(session);
      }
      res.set_header("Set-Cookie", "session=" + session + "; Path=/; HttpOnly");
      send(res, 200, json{{"ok", true}});
    });

    server.Get("/api/datasets", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mu);
      if (!authenticated(req)) return send(res, 401, json{{"error", "login required"}});
      const bool by_name = req.has_param("name");
      const auto name = req.get_param_value("name");
      auto out = json::array();
      for (const auto& slug : order) {
        const auto& p = records.at(slug);
        if (!by_name || p.name == name) out.push_back(remote_json(slug, p));
      }
      send(res, 200, out);
    });

    server.Get(R"(/api/datasets/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mu);
      if (!authenticated(req)) return send(res, 401, json{{"error", "login required"}});
      const auto it = records.find(req.matches[1].str());
      if (it == records.end()) return send(res, 404, json{{"error", "no such dataset"}});
      send(res, 200, remote_json(it->first, it->second));
    });

    server.Post("/api/datasets", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mu);
      if (!authenticated(req)) return send(res, 401, json{{"error", "login required"}});
      ExternalDatasetPayload payload;
      try {
        payload = payload_from_json(json::parse(req.body));
      } catch (const std::exception&) {
        return send(res, 400, json{{"error", "body must be a JSON object"}});
      }
      if (auto reason = reject_reason(payload)) return send(res, 400, json{{"error", *reason}});
      for (const auto& [slug, p] : records) {
        if (p.name == payload.name) return send(res, 409, json{{"error", "dataset name taken by " + slug}});
      }
      const auto created = insert_locked(payload);
      send(res, 201, remote_json(created.id, created.payload));
    });

    server.Patch(R"(/api/datasets/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mu);
      if (!authenticated(req)) return send(res, 401, json{{"error", "login required"}});
      const auto it = records.find(req.matches[1].str());
      if (it == records.end()) return send(res, 404, json{{"error", "no such dataset"}});
      ExternalDatasetPayload payload;
      try {
        payload = payload_from_json(json::parse(req.body));
      } catch (const std::exception&) {
        return send(res, 400, json{{"error", "body must be a JSON object"}});
      }
      if (auto reason = reject_reason(payload)) return send(res, 400, json{{"error", *reason}});
      it->second = payload;
      send(res, 200, remote_json(it->first, it->second));
    });

    server.Get("/debug/calls", [this](const httplib::Request&, httplib::Response& res) {
      std::lock_guard lock(mu);
      auto out = json::array();
      for (const auto& c : calls) out.push_back({{"method", c.method}, {"path", c.path}, {"status", c.status}});
      send(res, 200, out);
    });
  }
};

FakePwcServer::FakePwcServer(std::string username, std::string password) : impl_(std::make_unique<Impl>()) {
  impl_->username = std::move(username);
  impl_->password = std::move(password);
  impl_->routes();
}

FakePwcServer::~FakePwcServer() { stop(); }

int FakePwcServer::start(const std::string& host, int port) {
  impl_->host = host;
  impl_->port = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (impl_->port < 0) throw Error(ErrorKind::kIo, "cannot bind " + host + ":" + std::to_string(port));
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->port;
}

void FakePwcServer::run(const std::string& host, int port) {
  impl_->host = host;
  impl_->port = port;
  if (!impl_->server.listen(host, port)) throw Error(ErrorKind::kIo, "cannot listen on " + host + ":" + std::to_string(port));
}

void FakePwcServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::string FakePwcServer::url() const { return "http://" + impl_->host + ":" + std::to_string(impl_->port); }

std::vector<RecordedCall> FakePwcServer::calls() const {
  std::lock_guard lock(impl_->mu);
  return impl_->calls;
}

std::vector<RemoteDataset> FakePwcServer::datasets() const {
  std::lock_guard lock(impl_->mu);
  std::vector<RemoteDataset> out;
  for (const auto& slug : impl_->order) out.push_back({slug, impl_->records.at(slug)});
  return out;
}

void FakePwcServer::clear_calls() {
  std::lock_guard lock(impl_->mu);
  impl_->calls.clear();
}

RemoteDataset FakePwcServer::put(const ExternalDatasetPayload& payload) {
  std::lock_guard lock(impl_->mu);
  return impl_->insert_locked(payload);
}

}  // namespace resreg::sync
