#pragma once

#include <stdexcept>
#include <string>

namespace jcrev {

// Raised when an eigensolver fails to converge or a computed quantity
// violates its numerical contract (negative spin-flip eigenvalue, etc).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A state handed to a routine does not satisfy its physical preconditions.
class InvalidState : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed scan or report input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jcrev
