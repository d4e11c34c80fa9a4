#include "sdpfeas/errors.hpp"

namespace sdpfeas {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::AssumptionViolation: return "AssumptionViolation";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::WrongVariant: return "WrongVariant";
    case ErrorKind::Internal: return "InternalError";
  }
  return "Unknown";
}

}  // namespace sdpfeas
