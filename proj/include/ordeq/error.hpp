#pragma once

#include <stdexcept>
#include <string>

namespace ordeq {

enum class ErrorKind {
  kMalformedLp,
  kParse,
  kValidation,
  kUnknownOutcome,
  kUnsupportedSpace,
  kCapExceeded,
};

/// The single exception type thrown by the library. `kind()` tells callers
/// (notably the CLI exit-code mapping) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ordeq
