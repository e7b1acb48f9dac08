// Registry REST service.
//
// Environment: RESREG_LISTEN (host:port), RESREG_STORE (store file),
// RESREG_ADMIN_SECRET (bootstrap secret for POST /api/tokens),
// RESREG_RATING_CONFIG (rating config file). Flags override the environment.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "resreg/error.hpp"
#include "resreg/service/http_server.hpp"
#include "resreg/service/registry.hpp"
#include "signals.hpp"

namespace {

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : std::move(fallback);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace resreg;

  CLI::App app{"resource registry service"};
  std::string listen = env_or("RESREG_LISTEN", "127.0.0.1:8080");
  std::string store = env_or("RESREG_STORE", "registry.json");
  std::string rating_config = env_or("RESREG_RATING_CONFIG", "");
  std::string seed;
  bool offline_rating = false;
  double probe_timeout = 5.0;
  app.add_option("--listen", listen, "host:port to listen on (port 0 picks one)");
  app.add_option("--store", store, "persistence file");
  app.add_option("--seed", seed, "seed fixture applied when the store is empty")->check(CLI::ExistingFile);
  app.add_option("--rating-config", rating_config, "open licenses / institutional suffixes");
  app.add_flag("--offline-rating", offline_rating, "rate from recorded link state instead of probing");
  app.add_option("--probe-timeout", probe_timeout, "link probe timeout in seconds")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) {
    std::cerr << "error: --listen must be host:port\n";
    return 1;
  }
  const std::string host = listen.substr(0, colon);
  const int port = std::atoi(listen.c_str() + colon + 1);

  try {
    service::RegistryOptions options;
    options.store_path = store;
    options.admin_secret = env_or("RESREG_ADMIN_SECRET", "");
    if (options.admin_secret.empty()) {
      std::cerr << "warning: RESREG_ADMIN_SECRET unset; tokens cannot be issued\n";
    }
    if (!rating_config.empty()) {
      options.rating_config = rating::RatingConfig::from(util::KeyValueConfig::load(rating_config));
    }
    if (offline_rating) {
      options.prober = std::make_shared<rating::RecordedStateProber>();
    } else {
      rating::ProbeOptions probe;
      probe.timeout = std::chrono::milliseconds(static_cast<long long>(probe_timeout * 1000));
      options.prober = std::make_shared<rating::HttpLinkProber>(probe);
    }

    service::Registry registry(std::move(options));
    if (!seed.empty()) {
      if (registry.apply_seed(service::load_fixture(seed))) {
        std::cerr << "seeded store from " << seed << "\n";
      } else {
        std::cerr << "store already populated; seed " << seed << " ignored\n";
      }
    }

    service::HttpServer server(registry);
    auto watcher = tools::watch_termination([&server] { server.stop(); });
    const int bound = server.bind(host, port);
    std::cout << "listening on http://" << host << ":" << bound << " (revision " << registry.revision() << ")"
              << std::endl;
    server.serve();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v.field << ": " << v.message << "\n";
    return 1;
  }
  return 0;
}
