#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace greenstream {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input lies outside the mathematical domain of an operation
/// (e.g. a bitrate below the ladder minimum).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A ladder, profile, catalog or run configuration is malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Arguments are individually valid but inconsistent with each other.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input that makes a ratio or share undefined (all-zero path, zero baseline).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Empty file or empty series.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// Malformed CSV content. `line()` is 1-based and counts the header.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& detail, const std::string& source = {})
      : Error((source.empty() ? "" : source + ": ") + "line " + std::to_string(line) + ": " +
              detail),
        line_(line),
        detail_(detail) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

}  // namespace greenstream
