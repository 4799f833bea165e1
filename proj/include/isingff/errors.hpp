#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace isingff {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A series or integral diverges at the requested argument (e.g. K(m) at m = 1).
class DivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Point on a branch cut.
class BranchError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A built-in self check (route agreement, doubling test) failed.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

class TruncationError : public AccuracyError {
 public:
  using AccuracyError::AccuracyError;
};

// Requested order exceeds the configured work budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Vanishing determinant or reflection coefficient.
class SingularError : public Error {
 public:
  using Error::Error;
};

// Non-fatal findings collected by an operation.
struct Diagnostics {
  std::vector<std::string> warnings;
  void warn(std::string msg) { warnings.push_back(std::move(msg)); }
};

}  // namespace isingff
