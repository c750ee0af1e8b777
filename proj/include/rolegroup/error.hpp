#pragma once

#include <stdexcept>
#include <string>

namespace rolegroup {

// Process exit codes used by the command-line tool.
enum class ExitCode : int {
  kSuccess = 0,
  kValidation = 1,
  kIo = 2,
  kAlignment = 3,
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual ExitCode exit_code() const = 0;
};

// Malformed input: bad tokens, self-pairs, dangling endpoints, config out of range.
class ValidationError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::kValidation; }
};

// Unparseable text input. Carries the 1-based line number when known.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A host or group referenced by an operation does not exist.
class LookupError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// An average over an empty set was requested.
class UndefinedAverageError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::kIo; }
};

// Two runs share no hosts, so nothing can be correlated.
class AlignmentError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::kAlignment; }
};

}  // namespace rolegroup
