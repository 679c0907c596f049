#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padic_hg {

enum class ErrorKind {
  DenominatorDivisibleByP,
  NotDivisible,
  PrecisionExhausted,
  CNotOneModP,
  NonUnitConstantTerm,
  NonzeroConstantTerm,
  NoPeriod,
  NoUnitCoefficient,
  PreconditionViolated,
  InvalidArgument,
  ConfigInvalid,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DenominatorDivisibleByP: return "DenominatorDivisibleByP";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::CNotOneModP: return "CNotOneModP";
    case ErrorKind::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorKind::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorKind::NoPeriod: return "NoPeriod";
    case ErrorKind::NoUnitCoefficient: return "NoUnitCoefficient";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

// Every failure raised by the library carries a kind so callers (and the
// suite runner) can tell precision problems from mathematical failures.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace padic_hg
