#pragma once

#include <stdexcept>
#include <string>

namespace ea {

// Failure taxonomy. Every library error carries a stable category so the CLI
// can emit a single-line machine-parsable message and pick an exit status
// without string-matching.
enum class ErrorCode {
  range,        // argument outside a tabulated/valid range
  domain,       // mathematically invalid input (divergent integral, sigma <= 0, ...)
  parse,        // malformed input file
  validation,   // well-formed input violating a structural requirement
  convergence,  // iteration or quadrature failed to converge
  io,           // file system failure
  config        // bad run configuration (unknown key, missing key, ...)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  const char* code_name() const noexcept {
    switch (code_) {
      case ErrorCode::range: return "range";
      case ErrorCode::domain: return "domain";
      case ErrorCode::parse: return "parse";
      case ErrorCode::validation: return "validation";
      case ErrorCode::convergence: return "convergence";
      case ErrorCode::io: return "io";
      case ErrorCode::config: return "config";
    }
    return "unknown";
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace ea
