#pragma once

#include <functional>
#include <thread>

namespace resreg::tools {

/// Blocks SIGINT/SIGTERM process-wide and returns a thread that calls
/// `on_signal` once either arrives. Call before spawning other threads.
std::jthread watch_termination(std::function<void()> on_signal);

}  // namespace resreg::tools
