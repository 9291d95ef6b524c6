#pragma once

#include <stdexcept>
#include <string>

namespace polarwell {

/// Argument outside the mathematical domain of an operation (|x| > 1, m < 0, theta outside (0, pi), ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Request exceeds what a particular computational path can deliver in double precision.
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: non-finite operator entries, inverse iteration that does not settle.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polarwell
