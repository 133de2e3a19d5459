#include "thinfilm/error.hpp"

namespace thinfilm {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::NonPositiveHeight: return "NonPositiveHeight";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DryOut: return "DryOut";
    case ErrorKind::BlowUp: return "BlowUp";
    case ErrorKind::StepLimit: return "StepLimit";
    case ErrorKind::Unavailable: return "Unavailable";
  }
  return "Unknown";
}

}  // namespace thinfilm
