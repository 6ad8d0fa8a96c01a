#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

// Bad arguments from a caller: out-of-range indices, unsupported weights,
// insufficient table coverage.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested computation cannot be configured, e.g. no NTT prime supports
// the transform length or the CRT basis is too small for the result.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapacityError : public ConfigurationError {
 public:
  using ConfigurationError::ConfigurationError;
};

// Two independent computations disagreed. Always a bug, never bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// |lambda(p)| exceeded 2 by more than rounding can explain.
class DeligneViolation : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

// A cache file is missing, truncated or fails its validation checks.
class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hecke
