#include "artin/errors.hpp"

namespace artin {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::domain_mismatch: return "domain-mismatch";
    case ErrorKind::parse: return "parse-error";
    case ErrorKind::capacity: return "capacity-error";
    case ErrorKind::configuration: return "configuration-error";
    case ErrorKind::precision: return "precision-error";
    case ErrorKind::hypothesis: return "hypothesis-violated";
    case ErrorKind::precondition: return "precondition-failed";
    case ErrorKind::not_divisible: return "not-divisible";
    case ErrorKind::unsupported: return "unsupported-instance";
    case ErrorKind::stalled: return "stalled";
  }
  return "unknown";
}

std::string ParseError::format(const std::string& what, int line, int column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column) +
         ": " + what;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return 3;
    case ErrorKind::capacity: return 4;
    case ErrorKind::precision:
    case ErrorKind::hypothesis:
    case ErrorKind::precondition:
    case ErrorKind::not_divisible:
    case ErrorKind::unsupported:
    case ErrorKind::stalled: return 2;
    default: return 1;
  }
}

}  // namespace artin
