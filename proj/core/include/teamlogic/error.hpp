#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace teamlogic {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Carries the 1-based position of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A symbol is not declared in the vocabulary or dependency registry.
class UnknownSymbolError : public Error {
 public:
  using Error::Error;
};

// A symbol is used with the wrong number of arguments.
class ArityError : public Error {
 public:
  using Error::Error;
};

// An object violates a structural invariant (bad tuple, team domain, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Evaluation needed a variable that the assignment or team does not bind.
class UnboundVariableError : public Error {
 public:
  using Error::Error;
};

// The formula is outside the fragment an operation accepts.
class FragmentError : public Error {
 public:
  using Error::Error;
};

// A file could not be opened or read.
class FileError : public Error {
 public:
  using Error::Error;
};

// A configured resource limit was hit. Callers translate this into a distinct
// "resource exhausted" outcome; it never means false.
class ResourceExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace teamlogic
