#pragma once

#include <stdexcept>
#include <string>

namespace t1m {

// Structured error codes. Numerical errors (everything except Parse/Config)
// map to CLI exit status 3; Parse/Config map to exit status 2.
enum class ErrorCode {
  DimensionMismatch,
  NullVector,
  OutOfRange,
  DegenerateMetric,
  OutOfDomain,
  NullSegment,
  NullNormal,
  GeodesicLift,
  NullFrameVector,
  FiberNotUnit,
  NullLift,
  LawMismatch,
  ImaginaryBeta,
  NullDerivative,
  SingularSigma,
  MismatchedBasePoints,
  ParseError,
  UnknownFunction,
  ConfigError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NullVector: return "NullVector";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NullSegment: return "NullSegment";
    case ErrorCode::NullNormal: return "NullNormal";
    case ErrorCode::GeodesicLift: return "GeodesicLift";
    case ErrorCode::NullFrameVector: return "NullFrameVector";
    case ErrorCode::FiberNotUnit: return "FiberNotUnit";
    case ErrorCode::NullLift: return "NullLift";
    case ErrorCode::LawMismatch: return "LawMismatch";
    case ErrorCode::ImaginaryBeta: return "ImaginaryBeta";
    case ErrorCode::NullDerivative: return "NullDerivative";
    case ErrorCode::SingularSigma: return "SingularSigma";
    case ErrorCode::MismatchedBasePoints: return "MismatchedBasePoints";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownFunction: return "UnknownFunction";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse errors carry the byte offset of the offending token.
class ParseFailure : public Error {
 public:
  ParseFailure(std::size_t pos, const std::string& what, ErrorCode code = ErrorCode::ParseError)
      : Error(code, what + " (at offset " + std::to_string(pos) + ")"), pos_(pos) {}

  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace t1m
