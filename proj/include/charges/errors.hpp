#pragma once

#include <stdexcept>
#include <string>

namespace charges {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid sizes, malformed or unknown configuration entries.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Caller violated an operation's precondition (index out of range, empty range).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Singular metric, non-spacelike slice, or a point outside an evaluator's domain.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Non-finite samples; for Bondi data usually a pole-regularity (Condition B) failure.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

}  // namespace charges
