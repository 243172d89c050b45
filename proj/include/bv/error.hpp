#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bv {

enum class ErrorCode {
  // construction
  OrderCapExceeded,
  InvalidPermutation,
  NotNormal,
  NotSubgroup,
  NotAnAutomorphism,
  ActionNotHomomorphic,
  SemidirectNonexistent,
  CosetLimitExceeded,
  UnboundGenerator,
  // parsing
  SyntaxError,
  UnknownGenerator,
  ArityError,
  // analysis
  NotTwoGenerated,
  DegenerateTrivialGroup,
  NotGenerating,
  EmptyFamily,
  PremiseFailed,
  ImagesNotStructure,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with the position (1-based) and the offending token.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, std::size_t line, std::size_t column,
             std::string token)
      : Error(code, message + " at " + std::to_string(line) + ":" + std::to_string(column) +
                        " near '" + token + "'"),
        line_(line),
        column_(column),
        token_(std::move(token)) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string token_;
};

}  // namespace bv
