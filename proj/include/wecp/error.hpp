#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wecp {

enum class ErrorKind {
  kZeroState,
  kIncompatibleStates,
  kInvalidState,
  kBadTransmittance,
  kModeCollision,
  kBadWiring,
  kWrongConvention,
  kUnknownMode,
  kBadCoefficients,
  kDomainError,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wecp
