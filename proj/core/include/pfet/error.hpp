#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pfet {

/// Base of every error raised by the library. Context (e.g. the protocol
/// block that failed) can be attached while the exception propagates.
class Error : public std::exception {
 public:
  explicit Error(std::string message) : message_(std::move(message)) {}

  const char* what() const noexcept override { return message_.c_str(); }

  void add_context(const std::string& context) { message_ = context + ": " + message_; }

 private:
  std::string message_;
};

/// Malformed arguments: length mismatches, violated preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

/// State probabilities drifted off the simplex beyond the diagnostic bound.
class SimplexDriftError : public Error {
 public:
  using Error::Error;
};

/// Ciphertexts or keys bound to different key material were combined.
class KeyMismatch : public Error {
 public:
  using Error::Error;
};

/// A multiplication would exceed the ciphertext depth budget.
class DepthExhausted : public Error {
 public:
  using Error::Error;
};

/// Value outside the fixed-point representable range.
class Overflow : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

/// Byte stream could not be decoded.
class DecodeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string origin, int line, std::string message);

  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct Violation {
  std::string path;
  std::string message;
};

/// Every violated invariant of an input, reported together.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

}  // namespace pfet
