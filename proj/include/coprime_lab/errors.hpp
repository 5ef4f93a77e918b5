#pragma once

#include <stdexcept>
#include <string>

namespace cplab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data (bad permutation, degree mismatch, bad schema value).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An element or subgroup is not inside the group it was required to lie in.
class ContainmentError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An operation would need to enumerate more elements than the configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Instance generation cannot realise the requested parameters.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Something that a proved statement rules out has happened; always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace cplab
