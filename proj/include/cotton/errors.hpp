#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cotton {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text: expressions, spec files, command-line values.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Expression syntax error, carrying the 0-based character offset.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : InputError(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Caller violated an operation's contract (shape, arity, algebraic input).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A computation needs more derivative orders than the jets carry.
class InsufficientJetOrder : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Division by a jet whose constant term vanishes.
class JetDivisionByZero : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DegenerateMetric : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotNull : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotCottonLike : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class InconsistentKernelDim : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class KernelContainsNonNull : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotRankOneForm : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// An internal consistency check of the null-frame decomposition failed.
class FrameAssertion : public Error {
 public:
  using Error::Error;
};

}  // namespace cotton
