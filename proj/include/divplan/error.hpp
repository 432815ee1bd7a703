#pragma once

#include <stdexcept>
#include <string>

namespace divplan {

// Root of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an internal consistency check fails (a bug, not bad input).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace divplan
