#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace axtherm {

/// Base of every error thrown by the kernel.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (unknown state id,
/// non-positive volume, state outside a reference bracket, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The model does not provide a capability the operation needs, e.g.
/// scaled copies of a few-particle spin system.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A composite object is malformed (broken polygonal chain, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// The process engine refused to execute a process.
class EngineError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A fit or measurement is undefined for the given data (0/0 temperature
/// probe, constant fit target).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// A calibration system does not pin down all unknowns.
class RankDeficiencyError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or fixture input. Line and column are 1-based;
/// zero means the position is unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0,
             std::size_t column = 0)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            std::size_t column) {
    if (line == 0) return message;
    return message + " (line " + std::to_string(line) + ", column " +
           std::to_string(column) + ")";
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace axtherm
