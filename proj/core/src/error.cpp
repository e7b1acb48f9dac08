#include "resreg/error.hpp"

namespace resreg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kConflict: return "conflict";
    case ErrorKind::kAuth: return "auth";
    case ErrorKind::kNotFound: return "not_found";
    case ErrorKind::kBadRequest: return "bad_request";
    case ErrorKind::kTransport: return "transport";
    case ErrorKind::kProtocol: return "protocol";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, std::string message)
    : std::runtime_error(std::move(message)), kind_(kind) {}

Error::Error(ErrorKind kind, std::string message, std::vector<Violation> violations)
    : std::runtime_error(std::move(message)), kind_(kind), violations_(std::move(violations)) {}

Error::Error(ErrorKind kind, std::string message, int http_status)
    : std::runtime_error(std::move(message)), kind_(kind), http_status_(http_status) {}

int Error::http_status() const noexcept {
  if (http_status_ != 0) return http_status_;
  switch (kind_) {
    case ErrorKind::kValidation: return 422;
    case ErrorKind::kConflict: return 409;
    case ErrorKind::kAuth: return 401;
    case ErrorKind::kNotFound: return 404;
    case ErrorKind::kBadRequest: return 400;
    case ErrorKind::kDomain: return 400;
    case ErrorKind::kTransport: return 502;
    case ErrorKind::kProtocol: return 502;
    case ErrorKind::kIo: return 500;
  }
  return 500;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kAuth: return 2;
    case ErrorKind::kTransport: return 3;
    default: return 1;
  }
}

}  // namespace resreg
