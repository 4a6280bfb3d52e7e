#pragma once

#include <stdexcept>
#include <string>

namespace drinfeld {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a precondition (bad arity, non-prime characteristic, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A configured size budget (field size, degree, enumeration count) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Input vectors were expected to be linearly independent but are not.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// Internal invariant broken; indicates a bug rather than bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

[[noreturn]] void throw_usage(const std::string& what);
[[noreturn]] void throw_resource(const std::string& what);

}  // namespace drinfeld
