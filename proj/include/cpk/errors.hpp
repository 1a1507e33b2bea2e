#pragma once

#include <stdexcept>
#include <string>

namespace cpk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input does not have the required shape (dimension mismatch, bad schema, dangling id).
class MalformedInput : public Error {
 public:
  using Error::Error;
};

/// Input is well formed but violates an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured size bound would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency check failed (a bug, not bad input).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace cpk
