#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rvaft {

enum class ErrorKind {
  kParse,
  kSchema,
  kUnknownNode,
  kRootRemoval,
  kRootAnnotation,
  kUnboundVariable,
  kTypeMismatch,
  kInvalidK,
  kUnclassifiedBranch,
  kUnknownProperty,
  kInvalidArgument,
  kIo,
};

const char* to_string(ErrorKind kind);

/// Base error for every failure surfaced by the library. Violations found by
/// `model::validate` are data, not errors, and never throw.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Text that could not be parsed. Line and column are 1-based; a guard
/// expression reports line 1 and the column of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorKind::kParse, format(message, line, column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            std::size_t column) {
    return "parse error at " + std::to_string(line) + ":" +
           std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace rvaft
