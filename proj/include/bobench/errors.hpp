#pragma once

#include <stdexcept>
#include <string>

namespace bobench {

// Point lies outside the domain box.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Integer-constrained coordinate holds a non-integer value.
class ConstraintError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// suggest/observe called out of order.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bobench
