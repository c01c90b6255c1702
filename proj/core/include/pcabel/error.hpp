#pragma once

#include <stdexcept>
#include <string>

namespace pcabel {

// Error categories double as CLI exit codes.
enum class ErrorKind : int {
  kInput = 2,         // parse, domain mismatch, classification
  kInconclusive = 3,  // empirical certification failed
  kOracleMismatch = 4,
  kResourceLimit = 5,
  kInternal = 6,      // a consistency check on our own output failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::kInput, what) {}
};

class InconclusiveError : public Error {
 public:
  explicit InconclusiveError(const std::string& what)
      : Error(ErrorKind::kInconclusive, what) {}
};

class OracleMismatchError : public Error {
 public:
  explicit OracleMismatchError(const std::string& what)
      : Error(ErrorKind::kOracleMismatch, what) {}
};

class ResourceLimitError : public Error {
 public:
  explicit ResourceLimitError(const std::string& what)
      : Error(ErrorKind::kResourceLimit, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what)
      : Error(ErrorKind::kInternal, what) {}
};

}  // namespace pcabel
