#pragma once

#include <stdexcept>
#include <string>

namespace koszulkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: bad expressions, wrong degrees, unknown generators.
class InputError : public Error {
public:
  InputError(const std::string& what, int line = 0, int column = 0)
      : Error(what), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

/// An operation was called outside of its documented domain.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// A confluence search hit its cap before either meeting or stabilising.
class UndeterminedError : public Error {
public:
  using Error::Error;
};

/// An identity that must hold by construction (or by a theorem under the
/// stated hypotheses) failed.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

}  // namespace koszulkit
