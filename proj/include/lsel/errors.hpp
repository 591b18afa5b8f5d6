#pragma once

#include <stdexcept>
#include <string>

namespace lsel {

// Raised when a p-adic quantity cannot be resolved at the working precision.
// Callers are expected to raise the precision and retry.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class RegionViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnsupportedDegree : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonConvergent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lsel
