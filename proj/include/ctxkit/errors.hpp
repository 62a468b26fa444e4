#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctxkit {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range input: bad names, sizes, arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

// Syntax error in a value expression; `position` is a 0-based offset.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Mathematically undefined operation (negative radicand, division by zero).
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

// Conditional expectation on an event of probability zero.
class UndefinedConditional : public Error {
 public:
  using Error::Error;
};

// A result failed its own postcondition check. Indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ctxkit
