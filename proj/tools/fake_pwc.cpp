// Stand-in external research catalog for hermetic sync tests.

#include <CLI11.hpp>

#include <condition_variable>
#include <cstdlib>
#include <iostream>
#include <mutex>

#include "resreg/error.hpp"
#include "resreg/sync/fake_pwc_server.hpp"
#include "signals.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fake external dataset catalog"};
  std::string host = "127.0.0.1";
  int port = 0;
  std::string username = std::getenv("FAKE_PWC_USERNAME") ? std::getenv("FAKE_PWC_USERNAME") : "demo";
  std::string password = std::getenv("FAKE_PWC_PASSWORD") ? std::getenv("FAKE_PWC_PASSWORD") : "demo";
  app.add_option("--host", host);
  app.add_option("--port", port, "0 picks a free port");
  app.add_option("--username", username);
  app.add_option("--password", password);
  CLI11_PARSE(app, argc, argv);

  std::mutex mu;
  std::condition_variable cv;
  bool done = false;
  auto watcher = resreg::tools::watch_termination([&] {
    std::lock_guard lock(mu);
    done = true;
    cv.notify_all();
  });

  try {
    resreg::sync::FakePwcServer server(username, password);
    server.start(host, port);
    std::cout << "listening on " << server.url() << std::endl;
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return done; });
  } catch (const resreg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
