#pragma once

#include <thread>

#include "resreg/error.hpp"

namespace resreg::sync {

template <typename Op>
auto with_retry(const RetryPolicy& policy, Op&& op, const std::function<void(std::chrono::milliseconds)>& sleep)
    -> decltype(op()) {
  auto backoff = policy.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return op();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kTransport || attempt >= policy.max_attempts) throw;
    }
    if (sleep) {
      sleep(backoff);
    } else {
      std::this_thread::sleep_for(backoff);
    }
    backoff = std::chrono::milliseconds(static_cast<long long>(backoff.count() * policy.multiplier));
  }
}

}  // namespace resreg::sync
