#pragma once

#include <stdexcept>
#include <string>

namespace unitfrac {

// Argument outside the mathematical domain of an operation (n = 0, m > n, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Argument within the domain but beyond an enumeration guard.
class CapacityError : public std::length_error {
 public:
  CapacityError(const std::string& what, unsigned limit)
      : std::length_error(what), limit_(limit) {}

  unsigned limit() const noexcept { return limit_; }

 private:
  unsigned limit_;
};

}  // namespace unitfrac
