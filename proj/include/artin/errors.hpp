#pragma once

#include <stdexcept>
#include <string>

namespace artin {

/// Failure categories. The CLI maps them onto exit codes (see exit_code()).
enum class ErrorKind {
  invalid_argument,
  domain_mismatch,
  parse,
  capacity,
  configuration,
  precision,
  hypothesis,
  precondition,
  not_divisible,
  unsupported,
  stalled,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Same error, message prefixed with the pipeline stage that raised it.
  Error in_stage(const std::string& stage) const {
    return Error(kind_, stage + ": " + what());
  }

 private:
  ErrorKind kind_;
};

/// Parse failure with 1-based position information.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(ErrorKind::parse, format(what, line, column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column);

  int line_;
  int column_;
};

/// 0 = certified success, 2 = hypothesis/precondition failure,
/// 3 = parse error, 4 = capacity error, 1 = anything else.
int exit_code(ErrorKind kind);

}  // namespace artin
