#pragma once

#include <sys/types.h>

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace resreg::testing {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Runs a program to completion. `env` entries are added to the inherited environment.
RunResult run(const std::vector<std::string>& argv, const std::map<std::string, std::string>& env = {});

/// A long-running child whose stdout is readable line by line.
class Child {
 public:
  Child(const std::vector<std::string>& argv, const std::map<std::string, std::string>& env = {});
  ~Child();

  Child(const Child&) = delete;
  Child& operator=(const Child&) = delete;

  /// Next stdout line, or nullopt on EOF/timeout.
  std::optional<std::string> read_line(std::chrono::milliseconds timeout = std::chrono::seconds(10));

  /// Reads lines until one contains "http://" and returns the URL in it.
  std::string wait_for_url(std::chrono::milliseconds timeout = std::chrono::seconds(10));

  void kill_hard();   // SIGKILL + reap
  void terminate();   // SIGTERM + reap
  bool running() const { return pid_ > 0; }

 private:
  pid_t pid_ = -1;
  int out_fd_ = -1;
  std::string buffer_;
};

}  // namespace resreg::testing
