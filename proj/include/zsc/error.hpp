#pragma once

#include <stdexcept>
#include <string>

namespace zsc {

// Bad argument or violated precondition supplied by the caller.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition on the input data does not hold (for example a
// derived weight that is not a multiple of the requested divisor).
class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Raised when a case analysis that is guaranteed to succeed does not. Never
// expected to fire; seeing one means there is a bug.
class LemmaViolation : public std::logic_error {
 public:
  explicit LemmaViolation(const std::string& what)
      : std::logic_error("lemma-violation: " + what) {}
};

}  // namespace zsc
