#pragma once

#include <stdexcept>
#include <string>

namespace tameconf {

/// Precondition violated by the caller (bad modulus, malformed matrix, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Request falls outside what the library handles (rank > 2 enumeration,
/// even conductor, overlapping moduli).
class UnsupportedScope : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A size cap was exceeded (closure size, enumeration budget).
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed corpus document; the message carries the row locator.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tameconf
