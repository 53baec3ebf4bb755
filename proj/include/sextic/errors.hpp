#pragma once

#include <stdexcept>
#include <string>

namespace sextic {

// One taxonomy for the whole library, aligned with the CLI exit codes:
//   1 usage, 2 domain, 3 resource, 4 I/O.
enum class ErrorCode : int { usage = 1, domain = 2, resource = 3, io = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Bad arguments / malformed input (caller mistake).
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& w) : Error(ErrorCode::usage, w) {}
};

// Mathematically invalid request (outside the function's domain).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& w) : Error(ErrorCode::domain, w) {}
};

// Configured limits exceeded or iteration failed to converge.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& w) : Error(ErrorCode::resource, w) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& w) : Error(ErrorCode::io, w) {}
};

// --- domain-error refinements used across modules ---

// Pade linear system singular or condition estimate above threshold.
class DegeneracyError : public DomainError {
 public:
  explicit DegeneracyError(const std::string& w) : DomainError(w) {}
};

// Rational-function evaluation at (numerically) a pole.
class PoleError : public DomainError {
 public:
  explicit PoleError(const std::string& w) : DomainError(w) {}
};

// Borel-plane pole on the positive real axis inside the quadrature range.
class NonSummableError : public DomainError {
 public:
  explicit NonSummableError(const std::string& w) : DomainError(w) {}
};

// Argument representable but the result overflows double range.
class RangeError : public DomainError {
 public:
  explicit RangeError(const std::string& w) : DomainError(w) {}
};

}  // namespace sextic
