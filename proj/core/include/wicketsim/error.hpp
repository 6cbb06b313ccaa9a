#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wicketsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. `line` is 1-based, 0 when the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& message)
      : Error(format(file, line, message)), file_(std::move(file)), line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& file, std::size_t line,
                            const std::string& message) {
    std::string out = file;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + message;
  }

  std::string file_;
  std::size_t line_;
};

/// Input parsed but broke a data-model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A selection scheme or lineup constraint cannot be satisfied by a roster.
class InfeasibleError : public ValidationError {
 public:
  InfeasibleError(std::string stratum, const std::string& message)
      : ValidationError(message), stratum_(std::move(stratum)) {}

  const std::string& stratum() const noexcept { return stratum_; }

 private:
  std::string stratum_;
};

}  // namespace wicketsim
