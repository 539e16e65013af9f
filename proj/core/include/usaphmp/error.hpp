#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace usaphmp {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based; 0 when the error is not tied
/// to a specific line (e.g. premature end of input).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Array lengths or indices that do not fit the instance.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Out-of-range argument (hub count, budget, etc).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A solution handed to an operation that requires feasibility.
class InfeasibleSolution : public Error {
 public:
  using Error::Error;
};

/// Instance for which the requested quantity is undefined (zero total flow,
/// single-hub statistics, ...).
class DegenerateInstance : public Error {
 public:
  using Error::Error;
};

/// Enumeration would exceed the caller's limit.
class SizeError : public Error {
 public:
  SizeError(std::uint64_t required, std::uint64_t limit)
      : Error("enumeration requires " +
              (required == UINT64_MAX ? std::string(">= 2^64")
                                      : std::to_string(required)) +
              " candidates, limit is " + std::to_string(limit)),
        required_(required) {}
  /// Saturates at UINT64_MAX.
  std::uint64_t required() const noexcept { return required_; }

 private:
  std::uint64_t required_;
};

}  // namespace usaphmp
