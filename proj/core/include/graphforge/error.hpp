#pragma once

#include <stdexcept>
#include <string>

namespace graphforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller supplied an argument outside the operation's domain
/// (probability outside [0,1], odd ring degree, C = 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input data could not be used: malformed files, disconnected graphs,
/// thresholds that leave nothing to sample, unreachable parameter targets.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace graphforge
