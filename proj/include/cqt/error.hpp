#pragma once

#include <stdexcept>
#include <string>

namespace cqt {

/// Input rejected by an invariant check. `code()` is a stable machine-readable
/// tag ("positivity", "trace", "spectrum-order", ...) used in CLI error output.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Two independent evaluation routes disagreed beyond tolerance.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cqt
