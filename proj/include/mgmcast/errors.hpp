#pragma once

#include <stdexcept>
#include <string>

namespace mgmcast {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates a precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The requested scheme cannot operate under the given configuration
/// (antenna count or pilot length too small).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A matrix required to be full rank was numerically rank deficient.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// File input/output failure; message carries the path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mgmcast
