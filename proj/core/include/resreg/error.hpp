#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace resreg {

/// A single failed invariant, attributed to the field that broke it.
struct Violation {
  std::string field;
  std::string message;

  bool operator==(const Violation&) const = default;
};

enum class ErrorKind {
  kValidation,  // 422
  kConflict,    // 409
  kAuth,        // 401
  kNotFound,    // 404
  kBadRequest,  // 400, malformed input that never reached validation
  kTransport,   // peer unreachable, timeouts
  kProtocol,    // peer answered with something unexpected
  kDomain,      // precondition violated by a local caller
  kIo,          // local filesystem failures
};

std::string_view to_string(ErrorKind kind);

/// The one exception type thrown across the library. Callers switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message);
  Error(ErrorKind kind, std::string message, std::vector<Violation> violations);
  Error(ErrorKind kind, std::string message, int http_status);

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<Violation>& violations() const noexcept { return violations_; }

  /// Status a server should answer with, or the status a client observed.
  int http_status() const noexcept;

 private:
  ErrorKind kind_;
  std::vector<Violation> violations_;
  int http_status_ = 0;
};

/// Stable process exit codes for the admin CLI:
/// 0 success, 1 validation/conflict, 2 auth, 3 transport.
int exit_code_for(ErrorKind kind);

}  // namespace resreg
