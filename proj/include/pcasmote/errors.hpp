#pragma once

#include <stdexcept>
#include <string>

namespace pcasmote {

/// Process exit statuses shared by the CLI and the error hierarchy below.
enum class ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kData = 3,
  kNumerical = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

/// Bad argument to a library call (shape mismatch, out-of-range parameter).
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what) : Error(ExitCode::kUsage, what) {}
};

/// Malformed input file. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(ExitCode::kData, line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ExitCode::kData, what) {}
};

class ImputationError : public Error {
 public:
  explicit ImputationError(const std::string& what) : Error(ExitCode::kData, what) {}
};

class ResampleError : public Error {
 public:
  explicit ResampleError(const std::string& what) : Error(ExitCode::kData, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ExitCode::kNumerical, what) {}
};

}  // namespace pcasmote
