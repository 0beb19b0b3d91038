#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace uavlink {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (d <= 0, lat > 90, ...).
class InputDomainError : public Error {
 public:
  using Error::Error;
};

// Anchor or segment configuration that makes a geometric problem ill-posed.
class GeometryError : public Error {
 public:
  using Error::Error;
};

class DegenerateFitError : public Error {
 public:
  using Error::Error;
};

class QueryError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented preconditions by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Raised by the CSV loaders. The message is prefixed with `source:line:`.
class LoadError : public Error {
 public:
  LoadError(std::string source, std::size_t line, const std::string& message)
      : Error(source + ":" + std::to_string(line) + ": " + message),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

}  // namespace uavlink
