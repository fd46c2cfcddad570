#include "wecp/error.hpp"

namespace wecp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kZeroState: return "ZeroState";
    case ErrorKind::kIncompatibleStates: return "IncompatibleStates";
    case ErrorKind::kInvalidState: return "InvalidState";
    case ErrorKind::kBadTransmittance: return "BadTransmittance";
    case ErrorKind::kModeCollision: return "ModeCollision";
    case ErrorKind::kBadWiring: return "BadWiring";
    case ErrorKind::kWrongConvention: return "WrongConvention";
    case ErrorKind::kUnknownMode: return "UnknownMode";
    case ErrorKind::kBadCoefficients: return "BadCoefficients";
    case ErrorKind::kDomainError: return "DomainError";
  }
  return "Unknown";
}

}  // namespace wecp
