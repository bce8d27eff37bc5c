#pragma once

#include <stdexcept>
#include <string>

namespace klein4 {

enum class ErrorKind {
  DivisionByZero,
  NonDividingDegree,
  FieldTooSmall,
  NonSplitDenominator,
  NotTotallyRamified,
  NotRamified,
  DegenerateCover,
  DegenerateLeadingCoefficient,
  InvalidLambda,
  InvariantViolation,
  NotAutomorphism,
  NotP1Base,
  SyntaxError,
  DivisionByZeroPoly,
  UnknownSymbol,
  ZeroElement,
  InvalidArgument,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  [[nodiscard]] ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NonDividingDegree: return "NonDividingDegree";
    case ErrorKind::FieldTooSmall: return "FieldTooSmall";
    case ErrorKind::NonSplitDenominator: return "NonSplitDenominator";
    case ErrorKind::NotTotallyRamified: return "NotTotallyRamified";
    case ErrorKind::NotRamified: return "NotRamified";
    case ErrorKind::DegenerateCover: return "DegenerateCover";
    case ErrorKind::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorKind::InvalidLambda: return "InvalidLambda";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::NotP1Base: return "NotP1Base";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DivisionByZeroPoly: return "DivisionByZeroPoly";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace klein4
