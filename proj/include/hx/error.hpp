#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hx {

enum class ErrorKind {
  EdgeSizeMismatch,
  VertexOutOfRange,
  DuplicateVertexInEdge,
  EmptyList,
  ParseError,
  FormatViolation,
  UniformityZero,
  UniformityMismatch,
  BadParameters,
  NonuniformPacking,
  ShadowMismatch,
  HypothesisFailed,
  RetriesExhausted,
  BudgetExhausted,
  TooManyCandidates,
  ResourceLimit,
  UsageError,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries one of the kinds above so the
// CLI can map it onto a stable JSON error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace hx
