#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace greetground {

// Coarse error categories. The CLI maps them onto exit codes 1, 2 and 3.
enum class ErrorKind {
  Config,   // bad option value or inconsistent configuration
  Data,     // missing or malformed fixture/data file
  Io,       // unwritable output, read failure mid-stream
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

/// Malformed or missing data file. `line()` is 1-based, 0 when not tied to a line.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what, std::size_t line = 0)
      : Error(ErrorKind::Data, what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace greetground
