#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdkit {

enum class ErrorCode {
  InvalidArgument,
  InvalidMorphism,
  NonMonicSpan,
  CodomainMismatch,
  IllFormedDiagram,
  TooLarge,
  NotChordal,
  NonTreeShape,
  NotTame,
  NotMono,
  NonFinSetValued,
  EmptyDecomposition,
  NotALayering,
  NotATreeDecomposition,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidMorphism: return "InvalidMorphism";
    case ErrorCode::NonMonicSpan: return "NonMonicSpan";
    case ErrorCode::CodomainMismatch: return "CodomainMismatch";
    case ErrorCode::IllFormedDiagram: return "IllFormedDiagram";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotChordal: return "NotChordal";
    case ErrorCode::NonTreeShape: return "NonTreeShape";
    case ErrorCode::NotTame: return "NotTame";
    case ErrorCode::NotMono: return "NotMono";
    case ErrorCode::NonFinSetValued: return "NonFinSetValued";
    case ErrorCode::EmptyDecomposition: return "EmptyDecomposition";
    case ErrorCode::NotALayering: return "NotALayering";
    case ErrorCode::NotATreeDecomposition: return "NotATreeDecomposition";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every recoverable failure in the library is reported through this type;
/// `code()` lets callers (the CLI in particular) map failures to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sdkit
