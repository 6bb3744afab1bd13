#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ptg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// exactmath
class DomainError : public Error {
 public:
  using Error::Error;
};
class SeamMismatch : public Error {
 public:
  using Error::Error;
};
class InfinitePiece : public Error {
 public:
  using Error::Error;
};
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

// model
class SyntaxError : public Error {
 public:
  using Error::Error;
};

enum class ValidationKind {
  UnknownLocation,
  FinalHasOutgoing,
  GuardOutOfBounds,
  NonAffineFinalCost,
  Deadlock,
  UrgentFinal,
  DuplicateName,
  Malformed,
};

const char* to_string(ValidationKind k);

class ValidationError : public Error {
 public:
  ValidationError(ValidationKind kind, const std::string& what)
      : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ValidationKind kind() const { return kind_; }

 private:
  ValidationKind kind_;
};

// urgent / solver
class PreconditionError : public Error {
 public:
  using Error::Error;
};
class NotFinite : public Error {
 public:
  using Error::Error;
};
class EmptyGame : public Error {
 public:
  using Error::Error;
};
class MissingTerminalValue : public Error {
 public:
  using Error::Error;
};
class NonSptg : public Error {
 public:
  using Error::Error;
};
class InfiniteValue : public Error {
 public:
  using Error::Error;
};
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// strategy
class InvalidMove : public Error {
 public:
  using Error::Error;
};

// regions
class ResetCycle : public Error {
 public:
  explicit ResetCycle(std::vector<std::string> witness);
  const std::vector<std::string>& witness() const { return witness_; }

 private:
  std::vector<std::string> witness_;
};

}  // namespace ptg
