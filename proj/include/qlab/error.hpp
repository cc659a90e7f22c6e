#pragma once

#include <stdexcept>
#include <string>

namespace qlab {

// Failure categories shared by every module. Callers that only care about
// "something in qlab rejected the input" can catch qlab::Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand dimensions or windows do not line up.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A documented precondition was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Iterative method failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of the formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Too few samples / empty window for a discrete operation.
class WindowError : public Error {
 public:
  using Error::Error;
};

// Fock-space truncation is too small for the requested state.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int required_trunc)
      : Error(what), required_trunc_(required_trunc) {}

  int required_trunc() const noexcept { return required_trunc_; }

 private:
  int required_trunc_;
};

}  // namespace qlab
