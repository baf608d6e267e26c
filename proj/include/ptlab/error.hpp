#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ptlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " at offset " + std::to_string(pos)), offset(pos) {}
  std::size_t offset;
};

struct NotAFormulaCode : Error {
  NotAFormulaCode() : Error("not a formula code") {}
  explicit NotAFormulaCode(const std::string& why) : Error("not a formula code: " + why) {}
};

// Raised when a construction would exceed configured memory or size limits.
struct ResourceError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

// g0* without a decisive consistency answer.
struct OracleRequired : Error {
  using Error::Error;
};

}  // namespace ptlab
