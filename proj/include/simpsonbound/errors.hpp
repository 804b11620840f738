#pragma once

#include <stdexcept>
#include <string>

namespace simpsonbound {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive refinement ran out of subdivisions before meeting tolerance.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// The integral does not exist (panel estimates grow or fail to decay at an endpoint).
class DivergentIntegral : public Error {
 public:
  using Error::Error;
};

/// A function was evaluated outside the set where it is defined, or an argument is out of range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A function required to be nonnegative took a negative value.
class NegativityError : public Error {
 public:
  using Error::Error;
};

/// A theorem's explicit hypothesis (not a function-class certificate) does not hold.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace simpsonbound
