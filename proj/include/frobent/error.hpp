#pragma once

#include <stdexcept>
#include <string>

namespace frobent {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic domain violations: division by zero, mixing elements of different fields.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid input specifications (non-prime characteristic, gcd != 1, malformed configs).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The requested operation is not defined for this kind of object.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A truncation window was too small to certify a graded computation.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or size cap was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace frobent
