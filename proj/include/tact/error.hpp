#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tact {

enum class ErrorKind {
  ClearanceViolation,
  RefinementExhausted,
  DegenerateIncidence,
  ConfigError,
  InversionDiverged,
  NotFixed,
  DegenerateDenominator,
  NotContractibleFixed,
  ShellCapExceeded,
  CapExceeded,
  TruncationUnverified,
  NotConverged,
  CocycleResidualExceeded,
  DeckInconsistent,
  QuadratureFailure,
  SchemaError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure in the library is reported through this one type; `kind()`
// lets callers branch without parsing the message.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }
  // The message without the kind prefix, for rethrowing with more context.
  const std::string& detail() const noexcept { return detail_; }

private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

} // namespace tact
