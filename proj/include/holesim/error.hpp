#pragma once

#include <stdexcept>
#include <string>

namespace holesim {

// Base for every error the core raises. The C API maps these onto status codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by a caller (bad index, empty input, out-of-bounds node).
class DomainError : public Error {
public:
  using Error::Error;
};

// Configuration rejected at load or validation time.
class ConfigError : public Error {
public:
  using Error::Error;
};

// A simulation invariant failed at run time. Indicates a bug, not bad input.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

}  // namespace holesim
