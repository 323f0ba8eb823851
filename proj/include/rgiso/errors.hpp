#pragma once

#include <stdexcept>
#include <string>

namespace rgiso {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input larger than an exact-enumeration routine supports.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Every Monte Carlo trial exhausted its search budget, so no rate exists.
class UndefinedRateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rgiso
