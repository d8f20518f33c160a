#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hoqt {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t position, std::string expected)
      : Error(message + " at position " + std::to_string(position) +
              (expected.empty() ? "" : " (expected " + expected + ")")),
        message_(std::move(message)),
        position_(position),
        expected_(std::move(expected)) {}

  const std::string& message() const { return message_; }
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::string message_;
  std::size_t position_;
  std::string expected_;
};

// `A->B->C` without brackets.
class AmbiguityError : public ParseError {
 public:
  explicit AmbiguityError(std::size_t position)
      : ParseError("ambiguous arrow chain; add parentheses", position, "end of input or ')'") {}
};

class UnknownLabelError : public Error {
 public:
  explicit UnknownLabelError(const std::string& label)
      : Error("unknown system label '" + label + "'"), label_(label) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

class TypeMismatchError : public Error {
 public:
  using Error::Error;
};

class RegistryMismatchError : public Error {
 public:
  using Error::Error;
};

class StructureMismatchError : public Error {
 public:
  using Error::Error;
};

// A parallel-product basis family that fails to span its target space.
class SpanningError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace hoqt
