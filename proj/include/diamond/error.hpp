#pragma once

#include <stdexcept>
#include <string>

namespace diamond {

// Base of every exception thrown by the library. The C API maps each
// subclass onto one dmd_status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function (negative SNR,
// NaN, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed input structure: ragged LP rows, bad JSON keys, bad k grid.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Operation requested on a network variant that does not support it,
// e.g. CoMABC on a channel without a direct link.
class UnsupportedVariantError : public Error {
 public:
  using Error::Error;
};

// Text that is not well-formed JSON / CSV.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace diamond
