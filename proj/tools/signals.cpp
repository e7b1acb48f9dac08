#include "signals.hpp"

#include <pthread.h>
#include <signal.h>

namespace resreg::tools {

std::jthread watch_termination(std::function<void()> on_signal) {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  std::jthread watcher([set, on_signal = std::move(on_signal)] {
    int sig = 0;
    sigwait(&set, &sig);
    on_signal();
  });
  watcher.detach();
  return watcher;
}

}  // namespace resreg::tools
