#pragma once

#include <stdexcept>
#include <string>

namespace qcount {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions (or bases) do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A numeric parameter lies outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A matrix failed density-operator validation. Subclasses name the violated invariant.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public InvalidStateError {
 public:
  using InvalidStateError::InvalidStateError;
};

class NotPsdError : public InvalidStateError {
 public:
  using InvalidStateError::InvalidStateError;
};

class TraceError : public InvalidStateError {
 public:
  using InvalidStateError::InvalidStateError;
};

/// Kraus operators violate the completeness relation, or vectors fail orthonormality.
class InvalidChannelError : public Error {
 public:
  using Error::Error;
};

/// An index program was asked for an entry past the end of its output list.
class IndexBeyondCountError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcount
