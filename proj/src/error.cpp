#include "tact/error.hpp"

namespace tact {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::ClearanceViolation: return "ClearanceViolation";
  case ErrorKind::RefinementExhausted: return "RefinementExhausted";
  case ErrorKind::DegenerateIncidence: return "DegenerateIncidence";
  case ErrorKind::ConfigError: return "ConfigError";
  case ErrorKind::InversionDiverged: return "InversionDiverged";
  case ErrorKind::NotFixed: return "NotFixed";
  case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
  case ErrorKind::NotContractibleFixed: return "NotContractibleFixed";
  case ErrorKind::ShellCapExceeded: return "ShellCapExceeded";
  case ErrorKind::CapExceeded: return "CapExceeded";
  case ErrorKind::TruncationUnverified: return "TruncationUnverified";
  case ErrorKind::NotConverged: return "NotConverged";
  case ErrorKind::CocycleResidualExceeded: return "CocycleResidualExceeded";
  case ErrorKind::DeckInconsistent: return "DeckInconsistent";
  case ErrorKind::QuadratureFailure: return "QuadratureFailure";
  case ErrorKind::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace tact
