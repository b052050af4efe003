#pragma once

#include <stdexcept>
#include <string>

namespace fglab {

// Error taxonomy mirrored in CLI exit codes: rejected input -> 2,
// numerical failure -> 1.
enum class ErrorKind { RejectedInput, NumericalFailure };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const { return kind_; }
  // short machine-readable identifier, e.g. "model-mismatch", "log-resonance"
  const std::string& code() const { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

[[noreturn]] inline void reject(const std::string& code, const std::string& msg) {
  throw Error(ErrorKind::RejectedInput, code, msg);
}

[[noreturn]] inline void numerical_failure(const std::string& code, const std::string& msg) {
  throw Error(ErrorKind::NumericalFailure, code, msg);
}

}  // namespace fglab
